"""Text extraction from memento HTML.

Title and description follow the social-metadata-first cascades; body
text comes from an ARC90-readability-style boilerplate remover whose
constants are fixed here:

* a block earns one point per CHARS_PER_POINT characters of text;
* link density (linked characters / total characters) subtracts
  LINK_DENSITY_PENALTY * density points;
* blocks shorter than MIN_BLOCK_CHARS or with a non-positive score are
  boilerplate and dropped.

Sentence ranking offers lede3 (first three sentences of the best
paragraph) and textrank (cosine-similarity graph + power iteration).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from importlib import resources

from .errors import UnknownAlgorithm
from .htmlmini import collapse_ws, meta_content, parse_html

CHARS_PER_POINT = 100.0
LINK_DENSITY_PENALTY = 2.5
MIN_BLOCK_CHARS = 25

SNIPPET_LIMIT = 197
SNIPPET_PUNCTUATION = ".!?;:,\"')"

# jusText-style classification constants
JUSTEXT_LENGTH_LOW = 70
JUSTEXT_STOPWORD_DENSITY = 0.30
JUSTEXT_MAX_LINK_DENSITY = 0.5

TEXTRANK_SIMILARITY_THRESHOLD = 0.1
TEXTRANK_DAMPING = 0.85
TEXTRANK_MAX_ITERATIONS = 100
TEXTRANK_CONVERGENCE = 1e-6

PARAGRAPH_ALGORITHMS = ("readability", "justext")
SENTENCE_ALGORITHM_PAIRS = (
    "readability/lede3",
    "readability/textrank",
    "justext/textrank",
)

_STRIP_TAGS = (
    "script", "style", "noscript", "nav", "header", "footer", "form",
    "iframe", "svg", "template", "button", "head",
)
_BLOCK_TAGS = ("p", "blockquote", "pre", "td", "li", "div", "article", "section")

_TOKEN = re.compile(r"\w+", re.UNICODE)
_SENTENCE_SPLIT = re.compile(r"(?<=[.!?])\s+")

_stopword_cache = {}


def load_stopwords(path=None):
    """Stopword set from a one-word-per-line UTF-8 file (bundled default)."""
    key = path or "__default__"
    if key not in _stopword_cache:
        if path is None:
            text = resources.files("surrogatekit.data").joinpath(
                "stopwords_en.txt"
            ).read_text("utf-8")
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        _stopword_cache[key] = frozenset(
            line.strip().lower() for line in text.splitlines() if line.strip()
        )
    return _stopword_cache[key]


@dataclass(frozen=True)
class ScoredParagraph:
    text: str
    score: float
    index: int


@dataclass(frozen=True)
class ScoredSentence:
    text: str
    paragraph_index: int
    score: float
    rank: int


def _strip_boilerplate_tags(root):
    def prune(node):
        node.children = [
            child
            for child in node.children
            if isinstance(child, str) or child.tag not in _STRIP_TAGS
        ]
        for child in node.children:
            if not isinstance(child, str):
                prune(child)

    prune(root)
    return root


def _leaf_blocks(root):
    """Block-level elements with no nested block element, document order."""
    blocks = []
    for node in root.iter():
        if node.tag in _BLOCK_TAGS and not node.has_descendant(_BLOCK_TAGS):
            text = node.text()
            if text:
                blocks.append((node, text))
    return blocks


def _link_density(node, text):
    if not text:
        return 0.0
    linked = sum(len(a.text()) for a in node.find_all("a"))
    return min(linked / len(text), 1.0)


def readability_score(text_length, link_density):
    return text_length / CHARS_PER_POINT - LINK_DENSITY_PENALTY * link_density


def _scored_blocks(raw_html, content_type=None):
    root = _strip_boilerplate_tags(parse_html(raw_html, content_type))
    scored = []
    for index, (node, text) in enumerate(_leaf_blocks(root)):
        density = _link_density(node, text)
        scored.append((index, node, text, readability_score(len(text), density), density))
    return root, scored


def remove_boilerplate(raw_html, content_type=None):
    """Readable main-content text with navigation and chrome removed."""
    root, scored = _scored_blocks(raw_html, content_type)
    kept = [
        text
        for _, _, text, score, _ in scored
        if len(text) >= MIN_BLOCK_CHARS and score > 0
    ]
    if not kept and scored:
        # page of only small blocks: keep whatever is not link-dominated
        kept = [text for _, _, text, _, density in scored if density < 0.5]
    if not kept:
        # no block structure at all: fall back to whole-document text
        return root.text() if not scored else ""
    return collapse_ws(" ".join(kept))


def extract_title(raw_html, content_type=None):
    """og:title, else twitter:title, else the TITLE element, else ''."""
    root = parse_html(raw_html, content_type)
    social = meta_content(root, "og:title", "twitter:title")
    if social:
        return collapse_ws(social)
    title = root.find("title")
    if title is not None:
        return title.text()
    return ""


def make_snippet(content):
    """First SNIPPET_LIMIT characters, ellipsis unless it ends in punctuation."""
    snippet = content[:SNIPPET_LIMIT]
    if snippet and snippet[-1] not in SNIPPET_PUNCTUATION:
        snippet += "..."
    return snippet


def extract_description(raw_html, content_type=None):
    """og:description, else twitter:description, else a snippet of the content."""
    root = parse_html(raw_html, content_type)
    social = meta_content(root, "og:description", "twitter:description")
    if social:
        return collapse_ws(social)
    content = remove_boilerplate(raw_html, content_type)
    if not content:
        return ""
    return make_snippet(content)


def rank_paragraphs(raw_html, algorithm="readability", content_type=None, stopwords=None):
    """Score every candidate paragraph; returns (paragraphs, algorithm)."""
    if algorithm not in PARAGRAPH_ALGORITHMS:
        raise UnknownAlgorithm(f"unknown paragraph algorithm: {algorithm!r}")
    _, scored = _scored_blocks(raw_html, content_type)
    paragraphs = []
    if algorithm == "readability":
        for index, _, text, score, _ in scored:
            paragraphs.append(ScoredParagraph(text=text, score=score, index=index))
    else:
        stopwords = stopwords or load_stopwords()
        for index, _, text, _, density in scored:
            paragraphs.append(
                ScoredParagraph(text=text, score=_justext_score(text, density, stopwords), index=index)
            )
    return paragraphs, algorithm


def _justext_score(text, link_density, stopwords):
    """Stopword-density class mapped to a scalar: good blocks exceed 1.0."""
    tokens = _TOKEN.findall(text.lower())
    stopword_density = (
        sum(1 for t in tokens if t in stopwords) / len(tokens) if tokens else 0.0
    )
    is_good = (
        len(text) >= JUSTEXT_LENGTH_LOW
        and stopword_density >= JUSTEXT_STOPWORD_DENSITY
        and link_density <= JUSTEXT_MAX_LINK_DENSITY
    )
    return (1.0 + stopword_density) if is_good else stopword_density


def _good_paragraphs(paragraphs, algorithm):
    if algorithm == "readability":
        good = [p for p in paragraphs if p.score > 0 and len(p.text) >= MIN_BLOCK_CHARS]
    else:
        good = [p for p in paragraphs if p.score > 1.0]
    return good or paragraphs


def split_sentences(text):
    return [s.strip() for s in _SENTENCE_SPLIT.split(text) if s.strip()]


def rank_sentences(raw_html, algorithm_pair="readability/lede3", content_type=None, stopwords=None):
    """Two-stage sentence ranking.

    Returns (sentences, paragraph_algorithm, sentence_algorithm); ranks
    are a permutation of 1..n, rank 1 being the best (score ties break
    by document order).
    """
    if algorithm_pair not in SENTENCE_ALGORITHM_PAIRS:
        raise UnknownAlgorithm(f"unknown sentence algorithm pair: {algorithm_pair!r}")
    paragraph_algorithm, sentence_algorithm = algorithm_pair.split("/")
    paragraphs, _ = rank_paragraphs(
        raw_html, paragraph_algorithm, content_type=content_type, stopwords=stopwords
    )
    good = _good_paragraphs(paragraphs, paragraph_algorithm)
    sentences = []  # (text, paragraph_index, position_in_document)
    for paragraph in good:
        for sentence in split_sentences(paragraph.text):
            sentences.append((sentence, paragraph.index))
    if not sentences:
        return [], paragraph_algorithm, sentence_algorithm

    if sentence_algorithm == "lede3":
        scores = _lede3_scores(sentences, good)
    else:
        scores = _textrank_scores([s for s, _ in sentences], stopwords or load_stopwords())

    order = sorted(range(len(sentences)), key=lambda i: (-scores[i], i))
    ranked = [None] * len(sentences)
    for rank_position, sentence_index in enumerate(order, start=1):
        text, paragraph_index = sentences[sentence_index]
        ranked[sentence_index] = ScoredSentence(
            text=text,
            paragraph_index=paragraph_index,
            score=float(scores[sentence_index]),
            rank=rank_position,
        )
    return ranked, paragraph_algorithm, sentence_algorithm


def _lede3_scores(sentences, good_paragraphs):
    """Descending scores for the first three sentences of the best paragraph."""
    best = max(good_paragraphs, key=lambda p: p.score)  # max() keeps doc order on ties
    scores = [0.0] * len(sentences)
    assigned = 0
    for i, (_, paragraph_index) in enumerate(sentences):
        if paragraph_index == best.index and assigned < 3:
            scores[i] = float(3 - assigned)
            assigned += 1
    return scores


def _tf_vector(sentence, stopwords):
    counts = {}
    for token in _TOKEN.findall(sentence.lower()):
        if len(token) >= 2 and token not in stopwords:
            counts[token] = counts.get(token, 0) + 1
    return counts


def _cosine(a, b):
    if not a or not b:
        return 0.0
    dot = sum(count * b.get(term, 0) for term, count in a.items())
    if not dot:
        return 0.0
    norm = math.sqrt(sum(c * c for c in a.values())) * math.sqrt(
        sum(c * c for c in b.values())
    )
    return dot / norm


def _textrank_scores(sentence_texts, stopwords):
    """Power iteration over the thresholded cosine-similarity graph."""
    n = len(sentence_texts)
    if n == 1:
        return [1.0]
    vectors = [_tf_vector(s, stopwords) for s in sentence_texts]
    weights = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            sim = _cosine(vectors[i], vectors[j])
            if sim >= TEXTRANK_SIMILARITY_THRESHOLD:
                weights[i][j] = weights[j][i] = sim
    row_sums = [sum(row) for row in weights]
    scores = [1.0 / n] * n
    for _ in range(TEXTRANK_MAX_ITERATIONS):
        next_scores = []
        for i in range(n):
            incoming = sum(
                weights[j][i] / row_sums[j] * scores[j]
                for j in range(n)
                if weights[j][i] and row_sums[j]
            )
            next_scores.append((1.0 - TEXTRANK_DAMPING) / n + TEXTRANK_DAMPING * incoming)
        delta = sum(abs(a - b) for a, b in zip(next_scores, scores))
        scores = next_scores
        if delta < TEXTRANK_CONVERGENCE:
            break
    return scores


def word_frequencies(raw_html, stopwords=None, content_type=None):
    """(term, count) pairs by descending count (ties alphabetical)."""
    stopwords = stopwords if stopwords is not None else load_stopwords()
    text = remove_boilerplate(raw_html, content_type)
    counts = {}
    for token in _TOKEN.findall(text.lower()):
        if len(token) < 2 or token in stopwords:
            continue
        counts[token] = counts.get(token, 0) + 1
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))


def extract_page_metadata(raw_html, content_type=None):
    """All META name/property/itemprop keys mapped to their content values."""
    root = parse_html(raw_html, content_type)
    metadata = {}
    for node in root.find_all("meta"):
        content = node.get("content")
        if content is None:
            continue
        for attr in ("property", "name", "itemprop"):
            key = node.get(attr)
            if key and key.strip() and key.strip() not in metadata:
                metadata[key.strip()] = content
    return metadata
