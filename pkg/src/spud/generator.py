"""Nonce treebank generation: in-context content-word replacement.

For every content token, a replacement lemma attested in the same syntactic
context is sampled, realized through the morphological lexicon with the
token's FEATS, and adjusted by language-specific rules. Tree structure,
tags, and features are never touched; only surface forms change.
"""

from __future__ import annotations

import copy
import hashlib
import random
from dataclasses import dataclass, field

from .conllu import CONTENT_UPOS, Sentence, Token, Treebank
from .context import CandidatePool, SyntacticContext, candidates, extract_context
from .lexicon import Lexicon, PhonologyHints, inflect

LANGUAGES = ("ar", "de", "en", "fr", "ru")
LATIN_SCRIPT = ("de", "en", "fr")

# Arabic harakat block plus superscript alef
ARABIC_DIACRITICS = {chr(c) for c in range(0x064B, 0x0653)} | {"ٰ"}

GERMAN_ADJ_ENDINGS = ("em", "en", "er", "es", "e")

RETRY_BUDGET = 16


@dataclass
class GenOptions:
    seed: int
    language: str
    ignore_deprels: bool = False
    n_variants: int = 1
    drop_punct_deps: bool = False

    def __post_init__(self):
        if self.language not in LANGUAGES:
            raise ValueError(f"no rule set for language {self.language!r}")
        if self.n_variants < 1:
            raise ValueError("n_variants must be >= 1")


@dataclass
class ReplacementRecord:
    sent_id: str
    token_id: int
    original_lemma: str
    original_form: str
    new_lemma: str
    new_form: str
    upos: str
    replaced: bool
    failure_reason: str | None = None  # no_candidate | no_inflection | rule_filtered | in_mwt


@dataclass
class GenerationReport:
    per_upos_ratio: dict[str, float] = field(default_factory=dict)
    total_ratio: float = 0.0
    failure_counts: dict[str, int] = field(default_factory=dict)


def strip_arabic_diacritics(text: str) -> str:
    return "".join(ch for ch in text if ch not in ARABIC_DIACRITICS)


def preprocess_arabic(tb: Treebank) -> Treebank:
    """Return a copy of tb with diacritics stripped from forms and lemmas."""
    out = copy.deepcopy(tb)
    for s in out.sentences:
        for t in s.tokens:
            t.form = strip_arabic_diacritics(t.form)
            t.lemma = strip_arabic_diacritics(t.lemma)
        for r in s.mwt:
            r.form = strip_arabic_diacritics(r.form)
        _refresh_text(s)
    return out


def token_rng(seed: int, variant: int, sent_id: str, token_id: int) -> random.Random:
    """Deterministic per-token RNG, independent of iteration order."""
    key = f"{seed}:{variant}:{sent_id}:{token_id}".encode("utf-8")
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "little"))


def _match_capitalization(original: str, replacement: str) -> str:
    if not original or not replacement:
        return replacement
    if original[0].isupper():
        return replacement[0].upper() + replacement[1:]
    if original[0].islower() and replacement[0].isupper():
        return replacement[0].lower() + replacement[1:]
    return replacement


def _german_ending(form: str) -> str | None:
    lowered = form.lower()
    for ending in GERMAN_ADJ_ENDINGS:
        if lowered.endswith(ending):
            return ending
    return None


def french_adj_positions(tb: Treebank) -> dict[str, set[str]]:
    """Attested positions (pre/post relative to the head) of amod adjectives."""
    positions: dict[str, set[str]] = {}
    for s in tb.sentences:
        for t in s.tokens:
            if t.upos != "ADJ" or t.deprel.split(":")[0] != "amod" or t.head == 0:
                continue
            pos = "pre" if t.id < t.head else "post"
            positions.setdefault(t.lemma.lower(), set()).add(pos)
    return positions


def _passes_rules(token: Token, new_form: str, lang: str,
                  adj_positions: dict[str, set[str]] | None,
                  new_lemma: str) -> bool:
    if lang == "de" and token.upos == "ADJ":
        ending = _german_ending(token.form)
        if ending is not None and _german_ending(new_form) != ending:
            return False
    if lang == "fr" and token.upos == "ADJ" and adj_positions is not None:
        if token.deprel.split(":")[0] == "amod" and token.head != 0:
            pos = "pre" if token.id < token.head else "post"
            attested = adj_positions.get(new_lemma.lower())
            if attested is not None and pos not in attested:
                return False
    return True


def _vowel_initial(form: str, hints: PhonologyHints | None) -> bool:
    if hints is not None:
        known = hints.is_vowel_initial(form)
        if known is not None:
            return known
    return bool(form) and form[0].lower() in "aeiou"


def _fr_elidable(form: str, hints: PhonologyHints | None) -> bool:
    if hints is not None:
        known = hints.is_fr_elidable(form)
        if known is not None:
            return known
    first = form[:1].lower()
    # unknown h-words are treated as mute (elidable), matching the common case
    return first in "aeiouéèêâîôûh"


def _set_space_after(token: Token, space: bool) -> None:
    parts = [p for p in (token.misc.split("|") if token.misc else []) if p != "SpaceAfter=No"]
    if not space:
        parts.append("SpaceAfter=No")
    token.misc = "|".join(parts) if parts else None


def _refresh_text(s: Sentence) -> None:
    """Regenerate the sentence text and its `# text` comment from the forms."""
    if s.text is None:
        return
    s.text = s.detokenize()
    for i, c in enumerate(s.comments):
        if c.startswith("# text =") or c.startswith("# text="):
            s.comments[i] = f"# text = {s.text}"
            break


def _apply_english_articles(s: Sentence, hints: PhonologyHints | None) -> None:
    for t in s.tokens:
        if t.form.lower() not in ("a", "an") or t.upos != "DET":
            continue
        if t.id >= len(s.tokens):
            continue
        following = s.tokens[t.id].form
        wanted = "an" if _vowel_initial(following, hints) else "a"
        if t.form.lower() != wanted:
            t.form = wanted.capitalize() if t.form[0].isupper() else wanted


def _apply_french_elision(s: Sentence, hints: PhonologyHints | None) -> None:
    for t in s.tokens:
        if t.id >= len(s.tokens):
            continue
        lowered = t.form.lower()
        following = s.tokens[t.id].form
        elide = _fr_elidable(following, hints)
        new = None
        if lowered in ("le", "la", "de") and elide:
            new = "l'" if lowered in ("le", "la") else "d'"
        elif lowered in ("l'", "d'") and not elide:
            if lowered == "d'":
                new = "de"
            else:
                new = "la" if t.feats.get("Gender") == "Fem" else "le"
        if new is not None:
            t.form = _match_capitalization(t.form, new)
            _set_space_after(t, not new.endswith("'"))


def apply_language_rules(s: Sentence, records: list[ReplacementRecord], lang: str,
                         hints: PhonologyHints | None) -> Sentence:
    """Post-replacement surface adjustments for one sentence (in place).

    Latin-script languages: replacement capitalization mirrors the replaced
    form. English: a/an agreement with the following word. French: le/la/de
    elision against the following word. Arabic and Russian add nothing here
    (Arabic diacritic stripping is input preprocessing).
    """
    by_token = {r.token_id: r for r in records if r.sent_id == s.sent_id}
    if lang in LATIN_SCRIPT:
        for t in s.tokens:
            r = by_token.get(t.id)
            if r is not None and r.replaced:
                t.form = _match_capitalization(r.original_form, t.form)
                r.new_form = t.form
    if lang == "en":
        _apply_english_articles(s, hints)
    elif lang == "fr":
        _apply_french_elision(s, hints)
    _refresh_text(s)
    return s


def _replace_token(token: Token, ctx: SyntacticContext, pool: CandidatePool,
                   lex: Lexicon, lang: str, rng: random.Random,
                   adj_positions) -> tuple[str, str, str | None]:
    """Pick a replacement for one token.

    Returns (new_lemma, new_form, failure_reason); on failure the original
    lemma and form are returned with the reason set.
    """
    cands = candidates(pool, ctx, token.lemma)
    if not cands:
        return token.lemma, token.form, "no_candidate"
    order = rng.sample(cands, k=min(RETRY_BUDGET, len(cands)))
    rule_rejected = False
    for i, cand in enumerate(order):
        form = inflect(lex, cand, token.upos, token.feats)
        if form is None:
            if i == 0 and not rule_rejected:
                return token.lemma, token.form, "no_inflection"
            continue
        if lang == "ar":
            form = strip_arabic_diacritics(form)
        if not _passes_rules(token, form, lang, adj_positions, cand):
            rule_rejected = True
            continue
        return cand, form, None
    return token.lemma, token.form, "rule_filtered" if rule_rejected else "no_inflection"


def generate(tb: Treebank, pool: CandidatePool, lex: Lexicon,
             hints: PhonologyHints | None, opts: GenOptions,
             variant: int = 0) -> tuple[Treebank, list[ReplacementRecord], GenerationReport]:
    """Produce a nonce treebank plus per-token records and summary statistics.

    Columns 4-8 (UPOS, XPOS, FEATS, HEAD, DEPREL) are preserved for every
    token; output is deterministic given (inputs, seed, variant).
    """
    lang = opts.language
    if lang == "ar":
        tb = preprocess_arabic(tb)
    out = copy.deepcopy(tb)
    adj_positions = french_adj_positions(tb) if lang == "fr" else None
    records: list[ReplacementRecord] = []
    arabic_strip = strip_arabic_diacritics if lang == "ar" else None

    for s_in, s_out in zip(tb.sentences, out.sentences):
        mwt_ids = s_in.mwt_covered_ids()
        sent_records = []
        for tok_in, tok_out in zip(s_in.tokens, s_out.tokens):
            if tok_in.upos not in CONTENT_UPOS:
                continue
            record = ReplacementRecord(
                sent_id=s_in.sent_id, token_id=tok_in.id,
                original_lemma=tok_in.lemma, original_form=tok_in.form,
                new_lemma=tok_in.lemma, new_form=tok_in.form,
                upos=tok_in.upos, replaced=False,
            )
            if tok_in.id in mwt_ids:
                record.failure_reason = "in_mwt"
            else:
                ctx = extract_context(s_in, tok_in.id,
                                      ignore_deprels=opts.ignore_deprels,
                                      drop_punct_deps=opts.drop_punct_deps)
                rng = token_rng(opts.seed, variant, s_in.sent_id, tok_in.id)
                new_lemma, new_form, reason = _replace_token(
                    tok_in, ctx, pool, lex, lang, rng, adj_positions)
                if arabic_strip is not None:
                    new_lemma, new_form = arabic_strip(new_lemma), arabic_strip(new_form)
                record.new_lemma = new_lemma
                record.new_form = new_form
                record.failure_reason = reason
                if reason is None:
                    record.replaced = True
                    tok_out.form = new_form
                    tok_out.lemma = new_lemma
            sent_records.append(record)
        apply_language_rules(s_out, sent_records, lang, hints)
        # a replacement that realizes the identical surface form counts as kept
        for r in sent_records:
            if r.replaced and r.new_form == r.original_form:
                r.replaced = False
                r.failure_reason = "no_candidate"
                r.new_lemma = r.original_lemma
        records.extend(sent_records)

    total_tokens = sum(len(s.tokens) for s in tb.sentences)
    report = replacement_stats(records, total_tokens=total_tokens)
    return out, records, report


def replacement_stats(records: list[ReplacementRecord],
                      total_tokens: int | None = None) -> GenerationReport:
    """Per-UPOS and total replacement ratios plus failure-reason counts.

    The total ratio is over all tokens including function words and
    punctuation, so total_tokens should be the full token count; it defaults
    to the number of records (content tokens only).
    """
    per_upos_counts: dict[str, list[int]] = {}
    failures: dict[str, int] = {}
    replaced_total = 0
    for r in records:
        counts = per_upos_counts.setdefault(r.upos, [0, 0])
        counts[1] += 1
        if r.replaced:
            counts[0] += 1
            replaced_total += 1
        elif r.failure_reason:
            failures[r.failure_reason] = failures.get(r.failure_reason, 0) + 1
    report = GenerationReport()
    for upos, (replaced, total) in sorted(per_upos_counts.items()):
        report.per_upos_ratio[upos] = replaced / total if total else 0.0
    denom = total_tokens if total_tokens is not None else len(records)
    report.total_ratio = replaced_total / denom if denom else 0.0
    report.failure_counts = failures
    return report
