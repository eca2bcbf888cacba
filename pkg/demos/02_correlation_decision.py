"""
The length-correlation significance test
========================================

Translated text chunks have reliably proportional lengths, so the Pearson
coefficient of aligned chunk lengths separates real translation pairs
from coincidental structural look-alikes.  Significance comes from the
Student-t transform, which makes the sample size count: a modest r over
many chunks can be far stronger evidence than a high r over three.
"""

from webbitext import ChunkPairSet, decide_lengths, p_value, pearson_r
from webbitext.align import ChunkPair

print("A genuinely parallel pair: lengths track each other")
x = [12, 25, 40, 58, 77, 90, 110, 130, 155, 170]
y = [8, 28, 60, 57, 96, 112, 140, 146, 184, 187]
r = pearson_r(list(zip(x, y)))
print("  r = %.4f, p = %.2e" % (r, p_value(r, len(x))))
verdict, reason, corr = decide_lengths(
    ChunkPairSet([ChunkPair(a, b) for a, b in zip(x, y)]))
print("  verdict:", verdict)
print()

print("A bad pair: same skeleton, unrelated lengths")
x2 = [30, 45, 60, 75, 90, 105, 120, 135, 150, 165, 180, 195]
y2 = [57, 120, 162, 24, 72, 162, 151, 172, 163, 65, 142, 99]
r2 = pearson_r(list(zip(x2, y2)))
print("  r = %.4f, p = %.3f" % (r2, p_value(r2, len(x2))))
verdict, reason, _ = decide_lengths(
    ChunkPairSet([ChunkPair(a, b) for a, b in zip(x2, y2)]))
print("  verdict: %s (%s)" % (verdict, reason))
print()

print("Sample size matters: p for r = 0.57 as n grows")
for n in (5, 10, 20, 60, 120):
    print("  n = %3d  ->  p = %.6f" % (n, p_value(0.57, n)))
print()

print("Scale invariance: doubling every right-side length changes nothing")
y_scaled = [b * 2 for b in y]
r_scaled = pearson_r(list(zip(x, y_scaled)))
print("  r before %.12f, after %.12f" % (r, r_scaled))
print()

print("And a strong NEGATIVE correlation is evidence against translation:")
y_neg = [300 - a for a in x]
r_neg = pearson_r(list(zip(x, y_neg)))
verdict, reason, _ = decide_lengths(
    ChunkPairSet([ChunkPair(a, b) for a, b in zip(x, y_neg)]))
print("  r = %.3f  ->  %s (%s)" % (r_neg, verdict, reason))
