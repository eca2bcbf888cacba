"""Candidate pair generation from hub pages.

A hub is any page that links to multiple language versions of some
content.  Hubs are found with a search query of the form
``anchor:"language1" AND anchor:"language2"`` issued to a pluggable
search backend, then every hub is scanned for anchor pairs where one
anchor mentions language 1, the other mentions language 2, and the two
anchors sit no more than a configured number of source lines apart
(default 10).  A language "mention" is a case-insensitive substring hit
on the anchor's href, its visible text, or the ALT text of any image it
contains, which is what catches flag-image links and names buried in
file names like french.gif.
"""

from __future__ import annotations

import html
import os
import urllib.parse
import urllib.request
from bisect import bisect_right
from dataclasses import dataclass, field

from . import htmlscan
from .linearize import decode_html


@dataclass(frozen=True)
class CandidatePair:
    """Two locators hypothesized to be mutual translations."""

    url1: str
    url2: str
    source_hub: str = ""
    line_distance: int | None = None

    def key(self):
        return "%s %s" % (self.url1, self.url2)


@dataclass
class GeneratorConfig:
    lang1_names: frozenset
    lang2_names: frozenset
    max_line_distance: int = 10
    max_hits: int = 200

    def __post_init__(self):
        self.lang1_names = frozenset(s.casefold() for s in self.lang1_names)
        self.lang2_names = frozenset(s.casefold() for s in self.lang2_names)
        if not self.lang1_names or not self.lang2_names:
            raise ValueError("language name sets must be non-empty")
        if self.max_line_distance < 0:
            raise ValueError("max_line_distance must be >= 0")


@dataclass
class Anchor:
    """A hyperlink as seen in hub source: target, clickable surface, line."""

    href: str | None
    text: str = ""
    alts: list = field(default_factory=list)
    line: int = 1


def build_query(lang1, lang2):
    """Search query locating pages with anchors naming both languages."""
    if not lang1 or not lang2:
        raise ValueError("language names must be non-empty")
    return 'anchor:"%s" AND anchor:"%s"' % (lang1, lang2)


def parse_anchors(text):
    """Extract anchors (href, inner text, inner ALT texts, source line)."""
    line_starts = [0]
    for i, c in enumerate(text):
        if c == "\n":
            line_starts.append(i + 1)

    anchors = []
    open_anchor = None
    for ev in htmlscan.scan(text):
        if ev.kind == htmlscan.START and ev.name == "A":
            open_anchor = Anchor(href=ev.attrs.get("href"),
                                 line=bisect_right(line_starts, ev.offset))
            anchors.append(open_anchor)
        elif open_anchor is not None:
            if ev.kind == htmlscan.TEXT:
                open_anchor.text += html.unescape(ev.text)
            elif ev.kind == htmlscan.START and ev.name == "IMG":
                alt = ev.attrs.get("alt")
                if alt:
                    open_anchor.alts.append(alt)
            elif ev.kind == htmlscan.END and ev.name == "A":
                open_anchor = None
    return anchors


def anchor_matches(anchor, names):
    """True iff any name occurs (case-insensitively) in href, text, or ALT."""
    fields = [anchor.href or "", anchor.text]
    fields.extend(anchor.alts)
    folded = [f.casefold() for f in fields]
    return any(name in f for name in names for f in folded)


def resolve_locator(base, href):
    """Resolve a possibly-relative href against its hub's locator."""
    if "://" in href:
        return href
    if "://" in base:
        return urllib.parse.urljoin(base, href)
    return os.path.normpath(os.path.join(os.path.dirname(base), href))


def extract_candidates(hub_source, hub_locator, cfg):
    """All (lang1, lang2) anchor pairs within the line-distance bound.

    Returns CandidatePairs with hrefs resolved against the hub locator and
    exact (url1, url2) duplicates collapsed.  An unparseable hub yields an
    empty list, never an exception.
    """
    try:
        text = decode_html(hub_source)
        anchors = [a for a in parse_anchors(text) if a.href]
    except Exception:
        return []
    firsts = [a for a in anchors if anchor_matches(a, cfg.lang1_names)]
    seconds = [a for a in anchors if anchor_matches(a, cfg.lang2_names)]
    out = []
    seen = set()
    for a1 in firsts:
        for a2 in seconds:
            if a1 is a2:
                continue
            dist = abs(a1.line - a2.line)
            if dist > cfg.max_line_distance:
                continue
            pair = CandidatePair(resolve_locator(hub_locator, a1.href),
                                 resolve_locator(hub_locator, a2.href),
                                 source_hub=hub_locator, line_distance=dist)
            if (pair.url1, pair.url2) in seen:
                continue
            seen.add((pair.url1, pair.url2))
            out.append(pair)
    return out


def url_pattern_candidates(url, substitutions):
    """Optional generator: mirror a URL through path-fragment substitutions.

    ``http://x.org/en/program.html`` with ("/en/", "/fr/") yields the pair
    with ``http://x.org/fr/program.html``.  Substitutions apply to the
    path component (the whole string for plain file paths).
    """
    out = []
    if "://" in url:
        parts = urllib.parse.urlsplit(url)
        path = parts.path
        rebuild = lambda p: urllib.parse.urlunsplit(parts._replace(path=p))
    else:
        path = url
        rebuild = lambda p: p
    for frm, to in substitutions:
        if frm and frm in path:
            mirrored = rebuild(path.replace(frm, to))
            if mirrored != url:
                out.append(CandidatePair(url, mirrored))
    return out


class LocalFileBackend:
    """Search backend reading hub locators from a local file.

    One locator per line; blank lines and ``#`` comments are skipped.  The
    query is accepted and ignored, since the hub list was retrieved ahead
    of time.
    """

    def __init__(self, path):
        self.path = path

    def search(self, query, max_hits=200):
        hits = []
        with open(self.path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                hits.append(line)
                if len(hits) >= max_hits:
                    break
        return hits


class HttpSearchBackend:
    """Search backend calling an HTTP endpoint via a URL template.

    The template must contain ``{query}``; the endpoint is expected to
    answer with hub locators, one per line.
    """

    def __init__(self, url_template, timeout=30.0):
        if "{query}" not in url_template:
            raise ValueError("url_template must contain {query}")
        self.url_template = url_template
        self.timeout = timeout

    def search(self, query, max_hits=200):
        url = self.url_template.format(query=urllib.parse.quote_plus(query))
        with urllib.request.urlopen(url, timeout=self.timeout) as resp:
            body = resp.read()
        lines = decode_html(body).splitlines()
        hits = [ln.strip() for ln in lines if ln.strip()]
        return hits[:max_hits]
