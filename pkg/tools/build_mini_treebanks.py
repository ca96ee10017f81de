"""Build the bundled mini treebanks, lexicons, and wiktextract samples.

Writes data/mini/{lang}.conllu (50 sentences each), data/mini/{lang}.lex
(tab-separated form/lemma/upos/feats derived from the treebank attestations),
and small wiktextract-style JSONL dumps for English and French phonology.

Run from the repository root: python tools/build_mini_treebanks.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from spud.conllu import MwtRange, Sentence, Token, Treebank, parse_conllu, serialize

OUT = ROOT / "data" / "mini"

NOUN_SG = "Number=Sing"
VERB_PAST = "Mood=Ind|Number=Sing|Person=3|Tense=Past|VerbForm=Fin"
VERB_3SG = "Mood=Ind|Number=Sing|Person=3|Tense=Pres|VerbForm=Fin"
ADJ_POS = "Degree=Pos"


def feats(s):
    if not s:
        return {}
    return dict(item.split("=", 1) for item in s.split("|"))


def tok(i, form, lemma, upos, f, head, deprel, misc=None):
    return Token(id=i, form=form, lemma=lemma, upos=upos, xpos=None,
                 feats=feats(f), head=head, deprel=deprel, misc=misc)


def make_sentence(sent_id, tokens, mwt=()):
    sent = Sentence(sent_id=sent_id, text=None, comments=[], tokens=tokens,
                    mwt=list(mwt))
    text = sent.detokenize()
    sent.text = text
    sent.comments = [f"# sent_id = {sent_id}", f"# text = {text}"]
    return sent


def final_punct(tokens):
    """Mark the last token with SpaceAfter=No on its predecessor."""
    tokens[-2].misc = "SpaceAfter=No"
    return tokens


# --------------------------------------------------------------------------
# English: 10 templates x 5 fillers


def en_sentences():
    sents = []

    def add(template, idx, tokens, mwt=()):
        sents.append(make_sentence(f"en-{template}-{idx}", final_punct(tokens), mwt))

    e1 = [("service", "friendly", "fast"), ("interior", "bright", "clean"),
          ("kitchen", "quiet", "warm"), ("garden", "green", "calm"),
          ("window", "wide", "tall")]
    for i, (n, a1, a2) in enumerate(e1, 1):
        add("t1", i, [
            tok(1, "The", "the", "DET", "Definite=Def|PronType=Art", 2, "det"),
            tok(2, n, n, "NOUN", NOUN_SG, 4, "nsubj"),
            tok(3, "was", "be", "AUX", VERB_PAST, 4, "cop"),
            tok(4, a1, a1, "ADJ", ADJ_POS, 0, "root"),
            tok(5, "and", "and", "CCONJ", "", 6, "cc"),
            tok(6, a2, a2, "ADJ", ADJ_POS, 4, "conj"),
            tok(7, ".", ".", "PUNCT", "", 4, "punct"),
        ])

    e2 = [("farmer", "watched", "watch", "horse"),
          ("teacher", "painted", "paint", "wall"),
          ("driver", "opened", "open", "door"),
          ("neighbor", "cleaned", "clean", "yard"),
          ("artist", "closed", "close", "gate")]
    for i, (n1, v, vl, n2) in enumerate(e2, 1):
        add("t2", i, [
            tok(1, "A", "a", "DET", "Definite=Ind|PronType=Art", 2, "det"),
            tok(2, n1, n1, "NOUN", NOUN_SG, 3, "nsubj"),
            tok(3, v, vl, "VERB", VERB_PAST, 0, "root"),
            tok(4, "the", "the", "DET", "Definite=Def|PronType=Art", 5, "det"),
            tok(5, n2, n2, "NOUN", NOUN_SG, 3, "obj"),
            tok(6, ".", ".", "PUNCT", "", 3, "punct"),
        ])

    e3 = [("owl", "watched", "watch", "mouse"),
          ("eagle", "followed", "follow", "rabbit"),
          ("otter", "ignored", "ignore", "lizard"),
          ("ibis", "approached", "approach", "beetle"),
          ("emu", "circled", "circle", "frog")]
    for i, (n1, v, vl, n2) in enumerate(e3, 1):
        add("t3", i, [
            tok(1, "An", "a", "DET", "Definite=Ind|PronType=Art", 2, "det"),
            tok(2, n1, n1, "NOUN", NOUN_SG, 3, "nsubj"),
            tok(3, v, vl, "VERB", VERB_PAST, 0, "root"),
            tok(4, "the", "the", "DET", "Definite=Def|PronType=Art", 5, "det"),
            tok(5, n2, n2, "NOUN", NOUN_SG, 3, "obj"),
            tok(6, ".", ".", "PUNCT", "", 3, "punct"),
        ])

    e4 = [("old", "dog", "sleeps", "sleep", "quietly"),
          ("young", "cat", "eats", "eat", "slowly"),
          ("small", "bird", "sings", "sing", "loudly"),
          ("big", "fish", "swims", "swim", "calmly"),
          ("new", "clock", "ticks", "tick", "steadily")]
    for i, (a, n, v, vl, adv) in enumerate(e4, 1):
        add("t4", i, [
            tok(1, "My", "my", "PRON", "Number=Sing|Person=1|Poss=Yes|PronType=Prs",
                3, "nmod:poss"),
            tok(2, a, a, "ADJ", ADJ_POS, 3, "amod"),
            tok(3, n, n, "NOUN", NOUN_SG, 4, "nsubj"),
            tok(4, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(5, adv, adv, "ADV", "", 4, "advmod"),
            tok(6, ".", ".", "PUNCT", "", 4, "punct"),
        ])

    e5 = [("river", "flows", "flow", "village"),
          ("path", "bends", "bend", "forest"),
          ("road", "curves", "curve", "valley"),
          ("trail", "climbs", "climb", "ridge"),
          ("stream", "turns", "turn", "meadow")]
    for i, (n1, v, vl, n2) in enumerate(e5, 1):
        add("t5", i, [
            tok(1, "The", "the", "DET", "Definite=Def|PronType=Art", 2, "det"),
            tok(2, n1, n1, "NOUN", NOUN_SG, 3, "nsubj"),
            tok(3, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(4, "near", "near", "ADP", "", 6, "case"),
            tok(5, "the", "the", "DET", "Definite=Def|PronType=Art", 6, "det"),
            tok(6, n2, n2, "NOUN", NOUN_SG, 3, "obl"),
            tok(7, ".", ".", "PUNCT", "", 3, "punct"),
        ])

    e6 = [("Alice", "bought", "buy", "lamp"),
          ("Robert", "carried", "carry", "basket"),
          ("Maria", "borrowed", "borrow", "ladder"),
          ("Daniel", "repaired", "repair", "fence"),
          ("Sarah", "planted", "plant", "tree")]
    for i, (name, v, vl, n) in enumerate(e6, 1):
        add("t6", i, [
            tok(1, name, name, "PROPN", NOUN_SG, 2, "nsubj"),
            tok(2, v, vl, "VERB", VERB_PAST, 0, "root"),
            tok(3, "a", "a", "DET", "Definite=Ind|PronType=Art", 4, "det"),
            tok(4, n, n, "NOUN", NOUN_SG, 2, "obj"),
            tok(5, ".", ".", "PUNCT", "", 2, "punct"),
        ])

    e7 = [("soft", "carpet", "thick"), ("long", "hallway", "dark"),
          ("round", "table", "heavy"), ("steep", "staircase", "narrow"),
          ("plain", "ceiling", "low")]
    for i, (a1, n, a2) in enumerate(e7, 1):
        add("t7", i, [
            tok(1, "The", "the", "DET", "Definite=Def|PronType=Art", 3, "det"),
            tok(2, a1, a1, "ADJ", ADJ_POS, 3, "amod"),
            tok(3, n, n, "NOUN", NOUN_SG, 6, "nsubj"),
            tok(4, "was", "be", "AUX", VERB_PAST, 6, "cop"),
            tok(5, "very", "very", "ADV", "", 6, "advmod"),
            tok(6, a2, a2, "ADJ", ADJ_POS, 0, "root"),
            tok(7, ".", ".", "PUNCT", "", 6, "punct"),
        ])

    e8 = [("moved", "move", "piano", "carefully"),
          ("lifted", "lift", "crate", "slowly2"),
          ("folded", "fold", "blanket", "neatly"),
          ("stacked", "stack", "firewood", "evenly"),
          ("wrapped", "wrap", "package", "tightly")]
    for i, (v, vl, n, adv) in enumerate(e8, 1):
        adv = "slowly" if adv == "slowly2" else adv
        add("t8", i, [
            tok(1, "They", "they", "PRON", "Case=Nom|Number=Plur|Person=3|PronType=Prs",
                2, "nsubj"),
            tok(2, v, vl, "VERB", VERB_PAST, 0, "root"),
            tok(3, "the", "the", "DET", "Definite=Def|PronType=Art", 4, "det"),
            tok(4, n, n, "NOUN", NOUN_SG, 2, "obj"),
            tok(5, adv, adv, "ADV", "", 2, "advmod"),
            tok(6, ".", ".", "PUNCT", "", 2, "punct"),
        ])

    e9 = [("baker", "grocer", "waited", "wait"),
          ("singer", "dancer", "rested", "rest"),
          ("sailor", "pilot", "argued", "argue"),
          ("doctor", "nurse", "arrived", "arrive"),
          ("writer", "editor", "laughed", "laugh")]
    for i, (n1, n2, v, vl) in enumerate(e9, 1):
        add("t9", i, [
            tok(1, "The", "the", "DET", "Definite=Def|PronType=Art", 2, "det"),
            tok(2, n1, n1, "NOUN", NOUN_SG, 6, "nsubj"),
            tok(3, "and", "and", "CCONJ", "", 5, "cc"),
            tok(4, "the", "the", "DET", "Definite=Def|PronType=Art", 5, "det"),
            tok(5, n2, n2, "NOUN", NOUN_SG, 2, "conj"),
            tok(6, v, vl, "VERB", "Mood=Ind|Number=Plur|Person=3|Tense=Past|VerbForm=Fin",
                0, "root"),
            tok(7, ".", ".", "PUNCT", "", 6, "punct"),
        ])

    e10 = [("strange", "evening"), ("pleasant", "surprise"),
           ("simple", "mistake"), ("curious", "answer"),
           ("gentle", "reminder")]
    for i, (a, n) in enumerate(e10, 1):
        add("t10", i, [
            tok(1, "It", "it", "PRON", "Case=Nom|Number=Sing|Person=3|PronType=Prs",
                5, "nsubj"),
            tok(2, "was", "be", "AUX", VERB_PAST, 5, "cop"),
            tok(3, "a", "a", "DET", "Definite=Ind|PronType=Art", 5, "det"),
            tok(4, a, a, "ADJ", ADJ_POS, 5, "amod"),
            tok(5, n, n, "NOUN", NOUN_SG, 0, "root"),
            tok(6, ".", ".", "PUNCT", "", 5, "punct"),
        ])
    return sents


# --------------------------------------------------------------------------
# German: 10 templates x 5 fillers

DE_MASC = "Case=Nom|Gender=Masc|Number=Sing"
DE_FEM = "Case=Nom|Gender=Fem|Number=Sing"
DE_NEUT = "Case=Nom|Gender=Neut|Number=Sing"
DE_MASC_ACC = "Case=Acc|Gender=Masc|Number=Sing"


def de_sentences():
    sents = []

    def add(template, idx, tokens):
        sents.append(make_sentence(f"de-{template}-{idx}", final_punct(tokens)))

    g1 = [("kleine", "klein", "Hund", "schläft", "schlafen"),
          ("große", "groß", "Mann", "lacht", "lachen"),
          ("alte", "alt", "Baum", "wartet", "warten"),
          ("junge", "jung", "Tisch", "fällt", "fallen"),
          ("schnelle", "schnell", "Wagen", "rollt", "rollen")]
    for i, (a, al, n, v, vl) in enumerate(g1, 1):
        add("t1", i, [
            tok(1, "Der", "der", "DET", DE_MASC + "|PronType=Art", 3, "det"),
            tok(2, a, al, "ADJ", DE_MASC + "|Degree=Pos", 3, "amod"),
            tok(3, n, n, "NOUN", DE_MASC, 4, "nsubj"),
            tok(4, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(5, ".", ".", "PUNCT", "", 4, "punct"),
        ])

    g2 = [("weite", "weit", "Katze", "alt"), ("stille", "still", "Frau", "schön"),
          ("graue", "grau", "Stadt", "klein"), ("helle", "hell", "Tür", "grau"),
          ("runde", "rund", "Lampe", "leise")]
    for i, (a, al, n, a2) in enumerate(g2, 1):
        add("t2", i, [
            tok(1, "Die", "der", "DET", DE_FEM + "|PronType=Art", 3, "det"),
            tok(2, a, al, "ADJ", DE_FEM + "|Degree=Pos", 3, "amod"),
            tok(3, n, n, "NOUN", DE_FEM, 5, "nsubj"),
            tok(4, "war", "sein", "AUX", VERB_PAST, 5, "cop"),
            tok(5, a2, a2, "ADJ", ADJ_POS, 0, "root"),
            tok(6, ".", ".", "PUNCT", "", 5, "punct"),
        ])

    g3 = [("sieht", "sehen", "kleinen", "klein", "Ball"),
          ("holt", "holen", "großen", "groß", "Brief"),
          ("wirft", "werfen", "alten", "alt", "Stein"),
          ("sucht", "suchen", "neuen", "neu", "Apfel"),
          ("findet", "finden", "roten", "rot", "Kuchen")]
    for i, (v, vl, a, al, n) in enumerate(g3, 1):
        add("t3", i, [
            tok(1, "Er", "er", "PRON", "Case=Nom|Gender=Masc|Number=Sing|Person=3|PronType=Prs",
                2, "nsubj"),
            tok(2, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(3, "den", "der", "DET", DE_MASC_ACC + "|PronType=Art", 5, "det"),
            tok(4, a, al, "ADJ", DE_MASC_ACC + "|Degree=Pos", 5, "amod"),
            tok(5, n, n, "NOUN", DE_MASC_ACC, 2, "obj"),
            tok(6, ".", ".", "PUNCT", "", 2, "punct"),
        ])

    g4 = [("Buch", "liegt", "liegen", "dort"), ("Haus", "steht", "stehen", "hier"),
          ("Auto", "bleibt", "bleiben", "draußen"), ("Glas", "glänzt", "glänzen", "oben"),
          ("Brot", "fehlt", "fehlen", "unten")]
    for i, (n, v, vl, adv) in enumerate(g4, 1):
        add("t4", i, [
            tok(1, "Das", "der", "DET", DE_NEUT + "|PronType=Art", 2, "det"),
            tok(2, n, n, "NOUN", DE_NEUT, 3, "nsubj"),
            tok(3, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(4, adv, adv, "ADV", "", 3, "advmod"),
            tok(5, ".", ".", "PUNCT", "", 3, "punct"),
        ])

    g5 = [("Anna", "arbeitet", "arbeiten"), ("Peter", "singt", "singen"),
          ("Klaus", "kocht", "kochen"), ("Heidi", "liest", "lesen"),
          ("Jonas", "malt", "malen")]
    for i, (name, v, vl) in enumerate(g5, 1):
        add("t5", i, [
            tok(1, name, name, "PROPN", NOUN_SG, 2, "nsubj"),
            tok(2, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(3, "heute", "heute", "ADV", "", 2, "advmod"),
            tok(4, ".", ".", "PUNCT", "", 2, "punct"),
        ])

    g6 = [("Sonne", "scheint", "scheinen"), ("Uhr", "tickt", "ticken"),
          ("Maus", "piept", "piepen"), ("Blume", "blüht", "blühen"),
          ("Wolke", "zieht", "ziehen")]
    for i, (n, v, vl) in enumerate(g6, 1):
        add("t6", i, [
            tok(1, "Die", "der", "DET", DE_FEM + "|PronType=Art", 2, "det"),
            tok(2, n, n, "NOUN", DE_FEM, 3, "nsubj"),
            tok(3, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(4, "schnell", "schnell", "ADV", "", 3, "advmod"),
            tok(5, ".", ".", "PUNCT", "", 3, "punct"),
        ])

    g7 = [("Garten", "kalt"), ("Winter", "lang"), ("Abend", "ruhig"),
          ("Markt", "nass"), ("Fluss", "dunkel")]
    for i, (n, a) in enumerate(g7, 1):
        add("t7", i, [
            tok(1, "Der", "der", "DET", DE_MASC + "|PronType=Art", 2, "det"),
            tok(2, n, n, "NOUN", DE_MASC, 5, "nsubj"),
            tok(3, "war", "sein", "AUX", VERB_PAST, 5, "cop"),
            tok(4, "sehr", "sehr", "ADV", "", 5, "advmod"),
            tok(5, a, a, "ADJ", ADJ_POS, 0, "root"),
            tok(6, ".", ".", "PUNCT", "", 5, "punct"),
        ])

    g8 = [("kauft", "kaufen", "jungen", "jung", "Mantel"),
          ("trägt", "tragen", "warmen", "warm", "Teppich"),
          ("näht", "nähen", "hellen", "hell", "Pullover"),
          ("wäscht", "waschen", "weichen", "weich", "Schal"),
          ("bringt", "bringen", "runden", "rund", "Korb")]
    for i, (v, vl, a, al, n) in enumerate(g8, 1):
        add("t8", i, [
            tok(1, "Sie", "sie", "PRON", "Case=Nom|Gender=Fem|Number=Sing|Person=3|PronType=Prs",
                2, "nsubj"),
            tok(2, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(3, "einen", "ein", "DET", DE_MASC_ACC + "|PronType=Art", 5, "det"),
            tok(4, a, al, "ADJ", DE_MASC_ACC + "|Degree=Pos", 5, "amod"),
            tok(5, n, n, "NOUN", DE_MASC_ACC, 2, "obj"),
            tok(6, ".", ".", "PUNCT", "", 2, "punct"),
        ])

    g9 = [("stille2", "Kind", "spielt", "spielen"),
          ("helle2", "Licht", "leuchtet", "leuchten"),
          ("weite2", "Schiff", "segelt", "segeln"),
          ("graue2", "Pferd", "trabt", "traben"),
          ("runde2", "Fenster", "knarrt", "knarren")]
    for i, (a, n, v, vl) in enumerate(g9, 1):
        a = a.rstrip("2")
        add("t9", i, [
            tok(1, "Das", "der", "DET", DE_NEUT + "|PronType=Art", 3, "det"),
            tok(2, a, a[:-1], "ADJ", DE_NEUT + "|Degree=Pos", 3, "amod"),
            tok(3, n, n, "NOUN", DE_NEUT, 4, "nsubj"),
            tok(4, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(5, "dort", "dort", "ADV", "", 4, "advmod"),
            tok(6, ".", ".", "PUNCT", "", 4, "punct"),
        ])

    g10 = [("kommt", "kommen", "Lehrer"), ("ruht", "ruhen", "Bäcker"),
           ("tanzt", "tanzen", "Gärtner"), ("wandert", "wandern", "Maler"),
           ("badet", "baden", "Fischer")]
    for i, (v, vl, n) in enumerate(g10, 1):
        add("t10", i, [
            tok(1, "Heute", "heute", "ADV", "", 2, "advmod"),
            tok(2, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(3, "der", "der", "DET", DE_MASC + "|PronType=Art", 4, "det"),
            tok(4, n, n, "NOUN", DE_MASC, 2, "nsubj"),
            tok(5, ".", ".", "PUNCT", "", 2, "punct"),
        ])
    return sents


# --------------------------------------------------------------------------
# French: 10 templates x 5 fillers

FR_MASC = "Gender=Masc|Number=Sing"
FR_FEM = "Gender=Fem|Number=Sing"


def fr_sentences():
    sents = []

    def add(template, idx, tokens, mwt=()):
        sents.append(make_sentence(f"fr-{template}-{idx}", final_punct(tokens), mwt))

    f1 = [("chat", "petit"), ("chien", "grand"), ("livre", "vieux"),
          ("jardin", "rouge"), ("vélo", "lent")]
    for i, (n, a) in enumerate(f1, 1):
        add("t1", i, [
            tok(1, "Le", "le", "DET", FR_MASC + "|Definite=Def|PronType=Art", 2, "det"),
            tok(2, n, n, "NOUN", FR_MASC, 4, "nsubj"),
            tok(3, "est", "être", "AUX", VERB_3SG, 4, "cop"),
            tok(4, a, a, "ADJ", FR_MASC, 0, "root"),
            tok(5, ".", ".", "PUNCT", "", 4, "punct"),
        ])

    f2 = [("arbre", "haut"), ("ami", "calme"), ("hiver", "froid"),
          ("été", "chaud"), ("orage", "fort")]
    for i, (n, a) in enumerate(f2, 1):
        add("t2", i, [
            tok(1, "L'", "le", "DET", FR_MASC + "|Definite=Def|PronType=Art", 2, "det",
                misc="SpaceAfter=No"),
            tok(2, n, n, "NOUN", FR_MASC, 4, "nsubj"),
            tok(3, "est", "être", "AUX", VERB_3SG, 4, "cop"),
            tok(4, a, a, "ADJ", FR_MASC, 0, "root"),
            tok(5, ".", ".", "PUNCT", "", 4, "punct"),
        ])

    f3 = [("grande", "grand", "maison", "brille", "briller"),
          ("petite", "petit", "voiture", "tombe", "tomber"),
          ("belle", "beau", "ville", "roule", "rouler"),
          ("jolie", "joli", "fleur", "pousse", "pousser"),
          ("jeune", "jeune", "table", "reste", "rester")]
    for i, (a, al, n, v, vl) in enumerate(f3, 1):
        add("t3", i, [
            tok(1, "La", "le", "DET", FR_FEM + "|Definite=Def|PronType=Art", 3, "det"),
            tok(2, a, al, "ADJ", FR_FEM, 3, "amod"),
            tok(3, n, n, "NOUN", FR_FEM, 4, "nsubj"),
            tok(4, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(5, ".", ".", "PUNCT", "", 4, "punct"),
        ])

    f4 = [("mur", "vert", "craque", "craquer"),
          ("sac", "bleu", "penche", "pencher"),
          ("banc", "noir", "tient", "tenir"),
          ("pont", "blanc", "bouge", "bouger"),
          ("toit", "gris", "plie", "plier")]
    for i, (n, a, v, vl) in enumerate(f4, 1):
        add("t4", i, [
            tok(1, "Le", "le", "DET", FR_MASC + "|Definite=Def|PronType=Art", 2, "det"),
            tok(2, n, n, "NOUN", FR_MASC, 4, "nsubj"),
            tok(3, a, a, "ADJ", FR_MASC, 2, "amod"),
            tok(4, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(5, ".", ".", "PUNCT", "", 4, "punct"),
        ])

    f5 = [("Marie", "parle", "parler", "voyage"),
          ("Paul", "rêve", "rêver", "marché"),
          ("Luc", "doute", "douter", "projet"),
          ("Claire", "joue", "jouer", "match"),
          ("Hugo", "vient", "venir", "film")]
    for i, (name, v, vl, n) in enumerate(f5, 1):
        add("t5", i, [
            tok(1, name, name, "PROPN", FR_MASC if name in ("Paul", "Luc", "Hugo")
                else FR_FEM, 2, "nsubj"),
            tok(2, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(3, "de", "de", "ADP", "", 5, "case"),
            tok(4, "le", "le", "DET", FR_MASC + "|Definite=Def|PronType=Art", 5, "det"),
            tok(5, n, n, "NOUN", FR_MASC, 2, "obl"),
            tok(6, ".", ".", "PUNCT", "", 2, "punct"),
        ], mwt=[MwtRange(first=3, last=4, form="du")])

    f6 = [("ouvre", "ouvrir", "porte"), ("lit", "lire", "lettre"),
          ("mange", "manger", "pomme"), ("chante", "chanter", "chanson"),
          ("regarde", "regarder", "photo")]
    for i, (v, vl, n) in enumerate(f6, 1):
        add("t6", i, [
            tok(1, "Il", "il", "PRON", "Gender=Masc|Number=Sing|Person=3|PronType=Prs",
                2, "nsubj"),
            tok(2, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(3, "la", "le", "DET", FR_FEM + "|Definite=Def|PronType=Art", 4, "det"),
            tok(4, n, n, "NOUN", FR_FEM, 2, "obj"),
            tok(5, ".", ".", "PUNCT", "", 2, "punct"),
        ])

    f7 = [("bord", "route", "net"), ("fond", "cour", "plat"),
          ("coin", "salle", "sombre"), ("bout", "rue", "droit"),
          ("haut", "tour", "fin")]
    for i, (n1, n2, a) in enumerate(f7, 1):
        add("t7", i, [
            tok(1, "Le", "le", "DET", FR_MASC + "|Definite=Def|PronType=Art", 2, "det"),
            tok(2, n1, n1, "NOUN", FR_MASC, 7, "nsubj"),
            tok(3, "de", "de", "ADP", "", 5, "case"),
            tok(4, "la", "le", "DET", FR_FEM + "|Definite=Def|PronType=Art", 5, "det"),
            tok(5, n2, n2, "NOUN", FR_FEM, 2, "nmod"),
            tok(6, "est", "être", "AUX", VERB_3SG, 7, "cop"),
            tok(7, a, a, "ADJ", FR_MASC, 0, "root"),
            tok(8, ".", ".", "PUNCT", "", 7, "punct"),
        ])

    f8 = [("danse", "danser", "vite"), ("dort", "dormir", "bien"),
          ("sort", "sortir", "souvent"), ("attend", "attendre", "ici"),
          ("rentre", "rentrer", "tard")]
    for i, (v, vl, adv) in enumerate(f8, 1):
        add("t8", i, [
            tok(1, "Elle", "il", "PRON", "Gender=Fem|Number=Sing|Person=3|PronType=Prs",
                2, "nsubj"),
            tok(2, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(3, adv, adv, "ADV", "", 2, "advmod"),
            tok(4, ".", ".", "PUNCT", "", 2, "punct"),
        ])

    f9 = [("plage", "calme2"), ("forêt", "dense"), ("plaine", "vaste"),
          ("colline", "verte"), ("rivière", "claire")]
    for i, (n, a) in enumerate(f9, 1):
        a = a.rstrip("2")
        add("t9", i, [
            tok(1, "La", "le", "DET", FR_FEM + "|Definite=Def|PronType=Art", 2, "det"),
            tok(2, n, n, "NOUN", FR_FEM, 5, "nsubj"),
            tok(3, "est", "être", "AUX", VERB_3SG, 5, "cop"),
            tok(4, "très", "très", "ADV", "", 5, "advmod"),
            tok(5, a, a, "ADJ", FR_FEM if a.endswith("e") else FR_MASC, 0, "root"),
            tok(6, ".", ".", "PUNCT", "", 5, "punct"),
        ])

    f10 = [("garçon", "court", "courir", "parc"),
           ("homme", "entre", "entrer", "bureau"),
           ("oiseau", "chante2", "chanter", "bois"),
           ("enfant", "saute", "sauter", "salon"),
           ("cheval", "trotte", "trotter", "champ")]
    for i, (n1, v, vl, n2) in enumerate(f10, 1):
        v = v.rstrip("2")
        add("t10", i, [
            tok(1, "Un", "un", "DET", FR_MASC + "|Definite=Ind|PronType=Art", 2, "det"),
            tok(2, n1, n1, "NOUN", FR_MASC, 3, "nsubj"),
            tok(3, v, vl, "VERB", VERB_3SG, 0, "root"),
            tok(4, "dans", "dans", "ADP", "", 6, "case"),
            tok(5, "le", "le", "DET", FR_MASC + "|Definite=Def|PronType=Art", 6, "det"),
            tok(6, n2, n2, "NOUN", FR_MASC, 3, "obl"),
            tok(7, ".", ".", "PUNCT", "", 3, "punct"),
        ])
    return sents


# --------------------------------------------------------------------------
# Arabic: 5 templates x 10 fillers (forms carry harakat diacritics)

AR_NOM = "Case=Nom|Definite=Def|Number=Sing"
AR_ACC = "Case=Acc|Definite=Def|Number=Sing"
AR_GEN = "Case=Gen|Definite=Def|Number=Sing"
AR_VERB = "Aspect=Perf|Gender=Masc|Number=Sing|Person=3|Voice=Act"

AR_SUBJ = ["الوَلَدُ", "الرَجُلُ", "المُعَلِّمُ", "الطالِبُ", "الجارُ",
           "البَيتُ", "الجَبَلُ", "البَحرُ", "الشارِعُ", "المَسجِدُ"]
AR_OBJ = ["الكِتابَ", "البابَ", "القَلَمَ", "الدَرسَ", "الخُبزَ",
          "الماءَ", "الطَعامَ", "الحَقلَ", "الثَوبَ", "الحَجَرَ"]
AR_VERBS = ["رَأى", "كَتَبَ", "حَمَلَ", "فَتَحَ", "وَجَدَ",
            "أخَذَ", "تَرَكَ", "كَسَرَ", "غَسَلَ", "لَمَسَ"]
AR_ADJ = ["كَبيرٌ", "جَميلٌ", "قَديمٌ", "واسِعٌ", "بَعيدٌ",
          "صَغيرٌ", "جَديدٌ", "طَويلٌ", "قَصيرٌ", "نَظيفٌ"]
AR_LOC = ["البَيتِ", "الجَبَلِ", "البَحرِ", "الشارِعِ", "المَسجِدِ",
          "الحَقلِ", "السوقِ", "المَطبَخِ", "الصَفِّ", "المَكتَبِ"]
AR_IDAFA = ["كِتابُ", "بابُ", "قَلَمُ", "بَيتُ", "ثَوبُ",
            "حَقلُ", "دَرسُ", "خُبزُ", "حَجَرُ", "ماءُ"]
AR_ADV = ["اليَومَ", "غَداً", "الآنَ", "هُنا", "هُناكَ",
          "كَثيراً", "قَليلاً", "سَريعاً", "بَطيئاً", "دائِماً"]

ARABIC_DIACRITICS = {chr(c) for c in range(0x064B, 0x0653)} | {"ٰ"}


def ar_strip(text):
    return "".join(ch for ch in text if ch not in ARABIC_DIACRITICS)


def ar_sentences():
    sents = []

    def add(template, idx, tokens):
        sents.append(make_sentence(f"ar-{template}-{idx}", final_punct(tokens)))

    for i in range(10):
        v, s, o = AR_VERBS[i], AR_SUBJ[i], AR_OBJ[i]
        add("t1", i + 1, [
            tok(1, v, ar_strip(v), "VERB", AR_VERB, 0, "root"),
            tok(2, s, ar_strip(s), "NOUN", AR_NOM, 1, "nsubj"),
            tok(3, o, ar_strip(o), "NOUN", AR_ACC, 1, "obj"),
            tok(4, ".", ".", "PUNCT", "", 1, "punct"),
        ])
    for i in range(10):
        s, a = AR_SUBJ[i], AR_ADJ[i]
        add("t2", i + 1, [
            tok(1, s, ar_strip(s), "NOUN", AR_NOM, 2, "nsubj"),
            tok(2, a, ar_strip(a), "ADJ", "Case=Nom|Definite=Ind|Number=Sing", 0, "root"),
            tok(3, ".", ".", "PUNCT", "", 2, "punct"),
        ])
    for i in range(10):
        v, s, loc = AR_VERBS[i], AR_SUBJ[9 - i], AR_LOC[i]
        add("t3", i + 1, [
            tok(1, v, ar_strip(v), "VERB", AR_VERB, 0, "root"),
            tok(2, s, ar_strip(s), "NOUN", AR_NOM, 1, "nsubj"),
            tok(3, "في", "في", "ADP", "", 4, "case"),
            tok(4, loc, ar_strip(loc), "NOUN", AR_GEN, 1, "obl"),
            tok(5, ".", ".", "PUNCT", "", 1, "punct"),
        ])
    for i in range(10):
        n1, n2, a = AR_IDAFA[i], AR_LOC[9 - i], AR_ADJ[9 - i]
        add("t4", i + 1, [
            tok(1, n1, ar_strip(n1), "NOUN", "Case=Nom|Definite=Cons|Number=Sing",
                3, "nsubj"),
            tok(2, n2, ar_strip(n2), "NOUN", AR_GEN, 1, "nmod"),
            tok(3, a, ar_strip(a), "ADJ", "Case=Nom|Definite=Ind|Number=Sing", 0, "root"),
            tok(4, ".", ".", "PUNCT", "", 3, "punct"),
        ])
    for i in range(10):
        s, v, adv = AR_SUBJ[i], AR_VERBS[9 - i], AR_ADV[i]
        add("t5", i + 1, [
            tok(1, s, ar_strip(s), "NOUN", AR_NOM, 2, "nsubj"),
            tok(2, v, ar_strip(v), "VERB", AR_VERB, 0, "root"),
            tok(3, adv, ar_strip(adv), "ADV", "", 2, "advmod"),
            tok(4, ".", ".", "PUNCT", "", 2, "punct"),
        ])
    return sents


# --------------------------------------------------------------------------
# Russian: 5 templates x 10 fillers

RU_FEM_NOM = "Animacy=Anim|Case=Nom|Gender=Fem|Number=Sing"
RU_FEM_ACC = "Case=Acc|Gender=Fem|Number=Sing"
RU_MASC_NOM = "Case=Nom|Gender=Masc|Number=Sing"
RU_VPAST_F = "Gender=Fem|Mood=Ind|Number=Sing|Tense=Past|VerbForm=Fin"

RU_SUBJ_F = [("Собака", "собака"), ("Девочка", "девочка"), ("Женщина", "женщина"),
             ("Лошадь", "лошадь"), ("Птица", "птица"), ("Машина", "машина"),
             ("Кошка", "кошка"), ("Учительница", "учительница"),
             ("Сестра", "сестра"), ("Бабушка", "бабушка")]
RU_VPAST = [("видела", "видеть"), ("читала", "читать"), ("несла", "нести"),
            ("мыла", "мыть"), ("искала", "искать"), ("слушала", "слушать"),
            ("рисовала", "рисовать"), ("держала", "держать"),
            ("теряла", "терять"), ("находила", "находить")]
RU_OBJ = [("кошку", "кошка"), ("книгу", "книга"), ("сумку", "сумка"),
          ("чашку", "чашка"), ("лампу", "лампа"), ("рыбу", "рыба"),
          ("песню", "песня"), ("карту", "карта"), ("ложку", "ложка"),
          ("стену", "стена")]
RU_SUBJ_M = [("Дом", "дом"), ("Стол", "стол"), ("Город", "город"),
             ("Лес", "лес"), ("Мост", "мост"), ("Сад", "сад"),
             ("Поезд", "поезд"), ("Камень", "камень"), ("Берег", "берег"),
             ("Ветер", "ветер")]
RU_ADJ_M = [("большой", "большой"), ("старый", "старый"), ("новый", "новый"),
            ("тихий", "тихий"), ("тёмный", "тёмный"), ("белый", "белый"),
            ("крепкий", "крепкий"), ("быстрый", "быстрый"),
            ("холодный", "холодный"), ("высокий", "высокий")]
RU_V3SG = [("стоит", "стоять"), ("идёт", "идти"), ("спит", "спать"),
           ("растёт", "расти"), ("шумит", "шуметь"), ("летит", "лететь"),
           ("горит", "гореть"), ("висит", "висеть"), ("лежит", "лежать"),
           ("звенит", "звенеть")]
RU_ADV = ["тихо", "быстро", "медленно", "давно", "рядом", "всегда",
          "редко", "громко", "часто", "снова"]
RU_ADJ_F = [("Большая", "большой"), ("Старая", "старый"), ("Новая", "новый"),
            ("Тихая", "тихий"), ("Тёмная", "тёмный"), ("Белая", "белый"),
            ("Крепкая", "крепкий"), ("Быстрая", "быстрый"),
            ("Холодная", "холодный"), ("Высокая", "высокий")]
RU_SUBJ_F2 = [("река", "река"), ("дорога", "дорога"), ("школа", "школа"),
              ("деревня", "деревня"), ("комната", "комната"),
              ("погода", "погода"), ("трава", "трава"), ("крыша", "крыша"),
              ("дверь", "дверь"), ("лодка", "лодка")]
RU_VPAST_F2 = [("блестела", "блестеть"), ("шумела", "шуметь"),
               ("молчала", "молчать"), ("упала", "упасть"), ("росла", "расти"),
               ("ждала", "ждать"), ("спала", "спать"), ("дрожала", "дрожать"),
               ("скрипела", "скрипеть"), ("исчезла", "исчезнуть")]
RU_LOC = [("городе", "город"), ("лесу", "лес"), ("доме", "дом"),
          ("саду", "сад"), ("парке", "парк"), ("музее", "музей"),
          ("театре", "театр"), ("магазине", "магазин"), ("вагоне", "вагон"),
          ("дворе", "двор")]


def ru_sentences():
    sents = []

    def add(template, idx, tokens):
        sents.append(make_sentence(f"ru-{template}-{idx}", final_punct(tokens)))

    for i in range(10):
        (sf, sl), (vf, vl), (of, ol) = RU_SUBJ_F[i], RU_VPAST[i], RU_OBJ[i]
        add("t1", i + 1, [
            tok(1, sf, sl, "NOUN", RU_FEM_NOM, 2, "nsubj"),
            tok(2, vf, vl, "VERB", RU_VPAST_F, 0, "root"),
            tok(3, of, ol, "NOUN", RU_FEM_ACC, 2, "obj"),
            tok(4, ".", ".", "PUNCT", "", 2, "punct"),
        ])
    for i in range(10):
        (nf, nl), (af, al) = RU_SUBJ_M[i], RU_ADJ_M[i]
        add("t2", i + 1, [
            tok(1, nf, nl, "NOUN", RU_MASC_NOM, 3, "nsubj"),
            tok(2, "был", "быть", "AUX",
                "Gender=Masc|Mood=Ind|Number=Sing|Tense=Past|VerbForm=Fin", 3, "cop"),
            tok(3, af, al, "ADJ", "Case=Nom|Degree=Pos|Gender=Masc|Number=Sing",
                0, "root"),
            tok(4, ".", ".", "PUNCT", "", 3, "punct"),
        ])
    for i in range(10):
        (nf, nl), (vf, vl), adv = RU_SUBJ_M[i], RU_V3SG[i], RU_ADV[i]
        add("t3", i + 1, [
            tok(1, nf, nl, "NOUN", RU_MASC_NOM, 2, "nsubj"),
            tok(2, vf, vl, "VERB", VERB_3SG, 0, "root"),
            tok(3, adv, adv, "ADV", "Degree=Pos", 2, "advmod"),
            tok(4, ".", ".", "PUNCT", "", 2, "punct"),
        ])
    for i in range(10):
        (af, al), (nf, nl), (vf, vl) = RU_ADJ_F[i], RU_SUBJ_F2[i], RU_VPAST_F2[i]
        add("t4", i + 1, [
            tok(1, af, al, "ADJ", "Case=Nom|Degree=Pos|Gender=Fem|Number=Sing",
                2, "amod"),
            tok(2, nf, nl, "NOUN", "Case=Nom|Gender=Fem|Number=Sing", 3, "nsubj"),
            tok(3, vf, vl, "VERB", RU_VPAST_F, 0, "root"),
            tok(4, ".", ".", "PUNCT", "", 3, "punct"),
        ])
    for i in range(10):
        (sf, sl), (vf, vl), (lf, ll) = RU_SUBJ_F[9 - i], RU_V3SG[i], RU_LOC[i]
        add("t5", i + 1, [
            tok(1, sf, sl, "NOUN", RU_FEM_NOM, 2, "nsubj"),
            tok(2, vf, vl, "VERB", VERB_3SG, 0, "root"),
            tok(3, "в", "в", "ADP", "", 4, "case"),
            tok(4, lf, ll, "NOUN", "Case=Loc|Gender=Masc|Number=Sing", 2, "obl"),
            tok(5, ".", ".", "PUNCT", "", 2, "punct"),
        ])
    return sents


# --------------------------------------------------------------------------

WIKT_EN = [
    {"word": "apple", "pos": "noun", "sounds": [{"ipa": "/ˈæp.əl/"}]},
    {"word": "bicycle", "pos": "noun", "sounds": [{"ipa": "/ˈbaɪsɪkəl/"}]},
    {"word": "hour", "pos": "noun", "sounds": [{"ipa": "/ˈaʊə(ɹ)/"}]},
    {"word": "union", "pos": "noun", "sounds": [{"ipa": "/ˈjuːnjən/"}]},
    {"word": "owl", "pos": "noun", "sounds": [{"ipa": "/aʊl/"}]},
    {"word": "eagle", "pos": "noun", "sounds": [{"ipa": "/ˈiːɡəl/"}]},
    {"word": "otter", "pos": "noun", "sounds": [{"ipa": "/ˈɒtə/"}]},
    {"word": "ibis", "pos": "noun", "sounds": [{"ipa": "/ˈaɪbɪs/"}]},
    {"word": "emu", "pos": "noun", "sounds": [{"ipa": "/ˈiːmjuː/"}]},
    {"word": "farmer", "pos": "noun", "sounds": [{"ipa": "/ˈfɑːmə/"}],
     "forms": [{"form": "farmers", "tags": ["plural"]}]},
    {"word": "teacher", "pos": "noun", "sounds": [{"ipa": "/ˈtiːtʃə/"}]},
    {"word": "driver", "pos": "noun", "sounds": [{"ipa": "/ˈdɹaɪvə/"}]},
    {"word": "neighbor", "pos": "noun", "sounds": [{"ipa": "/ˈneɪbɚ/"}]},
    {"word": "artist", "pos": "noun", "sounds": [{"ipa": "/ˈɑːtɪst/"}]},
    {"word": "old", "pos": "adj", "sounds": [{"ipa": "/əʊld/"}]},
    {"word": "evening", "pos": "noun", "sounds": [{"ipa": "/ˈiːvnɪŋ/"}]},
    {"word": "answer", "pos": "noun", "sounds": [{"ipa": "/ˈɑːnsə/"}]},
]

WIKT_FR = [
    {"word": "arbre", "pos": "noun", "sounds": [{"ipa": "\\aʁbʁ\\"}]},
    {"word": "ami", "pos": "noun", "sounds": [{"ipa": "\\a.mi\\"}]},
    {"word": "hiver", "pos": "noun", "sounds": [{"ipa": "\\i.vɛʁ\\"}]},
    {"word": "été", "pos": "noun", "sounds": [{"ipa": "\\e.te\\"}]},
    {"word": "orage", "pos": "noun", "sounds": [{"ipa": "\\ɔ.ʁaʒ\\"}]},
    {"word": "héros", "pos": "noun", "sounds": [{"ipa": "\\e.ʁo\\", "tags": ["aspirated-h"]}]},
    {"word": "chat", "pos": "noun", "sounds": [{"ipa": "\\ʃa\\"}]},
    {"word": "chien", "pos": "noun", "sounds": [{"ipa": "\\ʃjɛ̃\\"}]},
    {"word": "livre", "pos": "noun", "sounds": [{"ipa": "\\livʁ\\"}]},
    {"word": "jardin", "pos": "noun", "sounds": [{"ipa": "\\ʒaʁ.dɛ̃\\"}]},
    {"word": "vélo", "pos": "noun", "sounds": [{"ipa": "\\ve.lo\\"}]},
    {"word": "voyage", "pos": "noun", "sounds": [{"ipa": "\\vwa.jaʒ\\"}]},
    {"word": "marché", "pos": "noun", "sounds": [{"ipa": "\\maʁ.ʃe\\"}]},
    {"word": "projet", "pos": "noun", "sounds": [{"ipa": "\\pʁɔ.ʒɛ\\"}]},
    {"word": "match", "pos": "noun", "sounds": [{"ipa": "\\matʃ\\"}]},
    {"word": "film", "pos": "noun", "sounds": [{"ipa": "\\film\\"}]},
]


def write_lexicon(sentences, path):
    rows = set()
    for s in sentences:
        for t in s.tokens:
            if t.upos in ("ADJ", "ADV", "NOUN", "PROPN", "VERB"):
                from spud.conllu import format_feats
                rows.add((t.form, t.lemma, t.upos, format_feats(t.feats)))
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for row in sorted(rows):
            f.write("\t".join(row) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    builders = {"en": en_sentences, "de": de_sentences, "fr": fr_sentences,
                "ar": ar_sentences, "ru": ru_sentences}
    for lang, builder in builders.items():
        sentences = builder()
        assert len(sentences) == 50, (lang, len(sentences))
        tb = Treebank(sentences=sentences)
        text = serialize(tb)
        parse_conllu(text)  # validates trees and round-trip parseability
        path = OUT / f"{lang}.conllu"
        path.write_text(text, encoding="utf-8", newline="\n")
        write_lexicon(sentences, OUT / f"{lang}.lex")
        print(f"wrote {path} ({len(sentences)} sentences)")
    for lang, records in (("en", WIKT_EN), ("fr", WIKT_FR)):
        path = OUT / f"{lang}.wikt.jsonl"
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            for rec in records:
                f.write(json.dumps(rec, ensure_ascii=False) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
