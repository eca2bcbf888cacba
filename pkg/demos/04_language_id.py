"""
Character n-gram language identification
========================================

Structural evaluation is language independent, which means an English
page paired with another English page can sail through it.  A trigram
character model per language, trained on a few kilobytes of known text,
confirms that each side is actually in the language its anchor claimed.
"""

from webbitext import classify, train
from webbitext.democorpus import sample_text

en_model = train(sample_text("en"), "en")
es_model = train(sample_text("es"), "es")
models = [en_model, es_model]
print("Trained trigram models: en on %d chars, es on %d chars"
      % (en_model.trained_chars, es_model.trained_chars))
print()

snippets = [
    "The library was a single room with tall shelves.",
    "La biblioteca era una sola sala con estantes altos.",
    "Every spring the farmers repaired the fences.",
    "Cada primavera los campesinos reparaban las cercas.",
    "water bridge winter morning children",
    "agua puente invierno manana ninos",
]
print("Classifying short snippets:")
for text in snippets:
    best, scores = classify(text, models)
    margin = abs(scores["en"] - scores["es"])
    print("  %-52r -> %s  (log-likelihood margin %.1f)" % (text, best, margin))
print()

print("Per-character log-likelihood of one English sentence under each model:")
probe = "the children walked together past the window"
for m in models:
    print("  %s: %.3f" % (m.language, m.log_prob(probe) / len(probe)))
