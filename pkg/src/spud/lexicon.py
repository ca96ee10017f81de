"""Morphological lexicon loading and inflected-form lookup.

Two sources are supported: a tab-separated projection of UDLexicons
(`form  lemma  upos  feats`) and line-delimited JSON dumps from wiktextract.
Lookup resolves (lemma, UPOS, features) to a surface form by superset
feature matching in a stable order, so results are reproducible across runs.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

from .conllu import format_feats, parse_feats

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LexEntry:
    form: str
    lemma: str
    upos: str
    feats: tuple[tuple[str, str], ...]

    def feats_dict(self) -> dict[str, str]:
        return dict(self.feats)


@dataclass
class Lexicon:
    # (lowercased lemma, upos) -> entries in stable order
    entries: dict[tuple[str, str], list[LexEntry]] = field(default_factory=dict)

    def add(self, form: str, lemma: str, upos: str, feats: dict[str, str]) -> None:
        if not form or not lemma:
            return
        entry = LexEntry(form=form, lemma=lemma, upos=upos,
                         feats=tuple(sorted(feats.items())))
        key = (lemma.lower(), upos)
        bucket = self.entries.setdefault(key, [])
        if entry not in bucket:
            bucket.append(entry)

    def finalize(self) -> None:
        """Sort buckets into a stable lookup order.

        Entries with fewer features come first so that superset matching
        prefers the least-marked form; ties break on the canonical feature
        string and then the form.
        """
        for bucket in self.entries.values():
            bucket.sort(key=lambda e: (len(e.feats), format_feats(e.feats_dict()),
                                       e.form))

    def __len__(self) -> int:
        return sum(len(b) for b in self.entries.values())


@dataclass
class PhonologyHints:
    vowel_initial: dict[str, bool] = field(default_factory=dict)
    fr_aspirated_h: dict[str, bool] = field(default_factory=dict)

    def is_vowel_initial(self, form: str) -> bool | None:
        return self.vowel_initial.get(form.lower())

    def is_fr_aspirated(self, form: str) -> bool:
        return self.fr_aspirated_h.get(form.lower(), False)

    def is_fr_elidable(self, form: str) -> bool | None:
        """Elidable = starts with a vowel sound and not aspirated h."""
        if self.is_fr_aspirated(form):
            return False
        return self.is_vowel_initial(form)


def load_udlexicon(path, upos_filter=None) -> Lexicon:
    """Load a tab-separated `form lemma upos feats` lexicon file.

    Rows with too few columns are skipped with a counted warning; duplicate
    rows are deduplicated.
    """
    lex = Lexicon()
    skipped = 0
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) < 3:
                skipped += 1
                continue
            form, lemma, upos = cols[0], cols[1], cols[2]
            if upos_filter is not None and upos not in upos_filter:
                continue
            feats = parse_feats(cols[3]) if len(cols) > 3 and cols[3] else {}
            lex.add(form, lemma, upos, feats)
    if skipped:
        log.warning("skipped %d malformed lexicon rows in %s", skipped, path)
    lex.finalize()
    return lex


# wiktextract "pos" values -> UPOS
_WIKT_POS = {
    "noun": "NOUN",
    "name": "PROPN",
    "verb": "VERB",
    "adj": "ADJ",
    "adv": "ADV",
}

# wiktextract form tags -> UD feature pairs (common subset)
_WIKT_TAGS = {
    "singular": ("Number", "Sing"),
    "plural": ("Number", "Plur"),
    "masculine": ("Gender", "Masc"),
    "feminine": ("Gender", "Fem"),
    "neuter": ("Gender", "Neut"),
    "past": ("Tense", "Past"),
    "present": ("Tense", "Pres"),
    "participle": ("VerbForm", "Part"),
    "infinitive": ("VerbForm", "Inf"),
    "comparative": ("Degree", "Cmp"),
    "superlative": ("Degree", "Sup"),
    "first-person": ("Person", "1"),
    "second-person": ("Person", "2"),
    "third-person": ("Person", "3"),
}

_IPA_VOWELS = set("aeiouyæɐɑɒɔəɘɛɜɞɤɪɨʉʊʌœøɶɵɯiueo̯ãõɛ̃œ̃ɑ̃")


def _ipa_first_is_vowel(ipa: str) -> bool | None:
    for ch in ipa:
        # delimiters and prosody marks; French wiktionaries delimit with backslashes
        if ch in "/[]\\ˈˌ. ‿()":
            continue
        return ch in _IPA_VOWELS
    return None


def _record_forms(record):
    """Yield (form, feats) for the record's lemma and inflected forms."""
    word = record.get("word", "")
    yield word, {}
    for form in record.get("forms", ()):
        text = form.get("form", "")
        if not text or text in ("-", word):
            continue
        tags = form.get("tags", ())
        if any(t in ("romanization", "transliteration", "alternative") for t in tags):
            continue
        feats = {}
        for tag in tags:
            pair = _WIKT_TAGS.get(tag)
            if pair:
                feats[pair[0]] = pair[1]
        yield text, feats


def load_wiktextract(path, lang: str) -> tuple[Lexicon, PhonologyHints]:
    """Load a wiktextract line-JSON dump into a lexicon plus phonology hints.

    Vowel-initiality is read off the first IPA segment; French aspirated h
    is taken from the dedicated tag on the record's pronunciation entries.
    Malformed JSON lines are skipped with a counted warning.
    """
    lex = Lexicon()
    hints = PhonologyHints()
    skipped = 0
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                skipped += 1
                continue
            upos = _WIKT_POS.get(record.get("pos", ""))
            word = record.get("word", "")
            if upos is None or not word:
                continue
            for form, feats in _record_forms(record):
                lex.add(form, word, upos, feats)
            sounds = record.get("sounds", ())
            aspirated = False
            vowel = None
            for sound in sounds:
                tags = sound.get("tags", ())
                if any("aspir" in t for t in tags):
                    aspirated = True
                ipa = sound.get("ipa")
                if ipa and vowel is None:
                    vowel = _ipa_first_is_vowel(ipa)
            if vowel is not None:
                hints.vowel_initial[word.lower()] = vowel
            if lang == "fr" and aspirated:
                hints.fr_aspirated_h[word.lower()] = True
                hints.vowel_initial[word.lower()] = False
    if skipped:
        log.warning("skipped %d malformed JSON lines in %s", skipped, path)
    lex.finalize()
    return lex, hints


def inflect(lex: Lexicon, lemma: str, upos: str, feats: dict[str, str]) -> str | None:
    """First form (in stable order) whose entry features are a superset of feats."""
    bucket = lex.entries.get((lemma.lower(), upos))
    if not bucket:
        return None
    requested = set(feats.items())
    for entry in bucket:
        if requested <= set(entry.feats):
            return entry.form
    return None


def merge_lexicons(*lexicons: Lexicon) -> Lexicon:
    merged = Lexicon()
    for lex in lexicons:
        for bucket in lex.entries.values():
            for e in bucket:
                merged.add(e.form, e.lemma, e.upos, e.feats_dict())
    merged.finalize()
    return merged
