#!/usr/bin/env python3
"""Rebuilds the bundled test corpora. Run from the repository root:

    python3 tests/fixtures/make_fixtures.py

Outputs (all committed, so running this is only needed to regenerate them):

  tokens_1000.txt            deterministic 1000-word tokenizer fixture
  google_sample.tsv          synthetic year-binned 1-gram sample with a
                             1%/year kernel turnover and count jitter
  english/english_corpus.txt.gz
                             >= 1M tokens of English prose harvested from the
                             docstrings of locally installed Python packages
                             (BSD-licensed scientific stack); doctest lines,
                             tables and markup are filtered out
  style/*.txt.gz, style/works.tsv
                             authorship fixture: three documentation
                             communities as author groups, four subpackage
                             corpora each as works

The harvested corpora are real human-written English; they stand in for
book-length public-domain texts, which are not available offline in this
environment.
"""

import contextlib
import gzip
import importlib
import inspect
import io
import os
import pkgutil
import random
import sys
import warnings
from pathlib import Path

ROOT = Path(__file__).resolve().parent

warnings.filterwarnings("ignore")

SKIP_PARTS = {"tests", "test", "conftest", "setup", "__main__", "f2py", "distutils"}


def quiet_import(name):
    """Imports a module with stdout/stderr silenced; None on any failure."""
    sink = io.StringIO()
    try:
        with contextlib.redirect_stdout(sink), contextlib.redirect_stderr(sink):
            return importlib.import_module(name)
    except BaseException:
        return None


def write_gz_text(path, text):
    """Deterministic gzip (fixed mtime) so regenerated fixtures hash equal."""
    with open(path, "wb") as raw:
        with gzip.GzipFile(fileobj=raw, mode="wb", compresslevel=9, mtime=0) as gz:
            gz.write(text.encode("utf-8"))


# ---------------------------------------------------------------------------
# docstring harvesting

def iter_module_names(root_name, limit=3000):
    root = quiet_import(root_name)
    if root is None:
        return
    yield root_name
    if not hasattr(root, "__path__"):
        return
    count = 0
    try:
        infos = list(pkgutil.walk_packages(root.__path__, prefix=root_name + ".",
                                           onerror=lambda name: None))
    except Exception:
        infos = []
    for info in infos:
        parts = info.name.split(".")
        if any(p.startswith("test") or p in SKIP_PARTS for p in parts):
            continue
        yield info.name
        count += 1
        if count >= limit:
            return


def iter_docstrings(module_names):
    seen_docs = set()
    for name in module_names:
        mod = quiet_import(name)
        if mod is None:
            continue
        objects = [mod]
        for attr in dir(mod):
            if attr.startswith("_"):
                continue
            try:
                obj = getattr(mod, attr)
            except Exception:
                continue
            if inspect.isclass(obj) or inspect.isroutine(obj):
                objects.append(obj)
                if inspect.isclass(obj):
                    for member_name in dir(obj):
                        if member_name.startswith("_"):
                            continue
                        try:
                            member = getattr(obj, member_name)
                        except Exception:
                            continue
                        if inspect.isroutine(member) or isinstance(member, property):
                            objects.append(member)
        for obj in objects:
            try:
                doc = inspect.getdoc(obj)
            except Exception:
                continue
            if not doc:
                continue
            key = hash(doc)
            if key in seen_docs:
                continue
            seen_docs.add(key)
            yield doc


def prose_lines(doc, seen_lines):
    """Keeps sentence-like lines; drops doctests, tables, rules, markup."""
    for raw in doc.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith((">>>", "...", "#", "--", "==", "::", "|", "+-", ".. ")):
            continue
        if " : " in line and len(line.split()) <= 6:  # parameter table rows
            continue
        compact = line.replace(" ", "")
        if not compact:
            continue
        letters = sum(c.isalpha() for c in compact)
        if letters < 0.7 * len(compact):
            continue
        if len(line.split()) < 4:
            continue
        if line in seen_lines:
            continue
        seen_lines.add(line)
        yield line


def harvest(packages, target_bytes):
    seen_lines = set()
    chunks = []
    total = 0
    for package in packages:
        for doc in iter_docstrings(iter_module_names(package)):
            for line in prose_lines(doc, seen_lines):
                chunks.append(line)
                total += len(line) + 1
                if total >= target_bytes:
                    return "\n".join(chunks) + "\n"
    return "\n".join(chunks) + "\n"


def build_english():
    packages = [
        "numpy", "scipy", "pandas", "sklearn", "matplotlib", "statsmodels",
        "networkx", "sqlalchemy", "sympy",
    ]
    text = harvest(packages, target_bytes=9_000_000)
    out = ROOT / "english" / "english_corpus.txt.gz"
    out.parent.mkdir(parents=True, exist_ok=True)
    write_gz_text(out, text)
    print(f"english corpus: {len(text)} bytes of text -> {out}")


# ---------------------------------------------------------------------------
# style fixture: three documentation communities, four works each

STYLE_WORKS = {
    "numpy": [
        ("numpy_core", ["numpy.core", "numpy.lib"]),
        ("numpy_linalg", ["numpy.linalg", "numpy.fft", "numpy.dual"]),
        ("numpy_ma", ["numpy.ma"]),
        ("numpy_random", ["numpy.random", "numpy.polynomial"]),
    ],
    "scipy": [
        ("scipy_stats", ["scipy.stats"]),
        ("scipy_signal", ["scipy.signal", "scipy.fftpack"]),
        ("scipy_optimize", ["scipy.optimize", "scipy.interpolate"]),
        ("scipy_sparse", ["scipy.sparse", "scipy.linalg"]),
    ],
    "sympy": [
        ("sympy_core", ["sympy.core"]),
        ("sympy_solvers", ["sympy.solvers", "sympy.polys"]),
        ("sympy_geometry", ["sympy.geometry", "sympy.vector"]),
        ("sympy_functions", ["sympy.functions", "sympy.simplify"]),
    ],
}


def build_style():
    style_dir = ROOT / "style"
    style_dir.mkdir(parents=True, exist_ok=True)
    manifest = []
    for author, works in STYLE_WORKS.items():
        for work_id, packages in works:
            text = harvest(packages, target_bytes=400_000)
            if len(text) < 30_000:
                print(f"warning: {work_id} only has {len(text)} bytes", file=sys.stderr)
            path = style_dir / f"{work_id}.txt.gz"
            write_gz_text(path, text)
            manifest.append(f"{author}\t{work_id}\t{path.name}")
            print(f"style work {work_id}: {len(text)} bytes")
    (style_dir / "works.tsv").write_text("\n".join(manifest) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# synthetic google 1-gram sample: zipfian vocabulary, 1%/year kernel turnover

def build_google_sample():
    rng = random.Random(424242)
    vocab = 600
    kernel = 200
    words = [f"w{i:05d}" for i in range(vocab)]
    mass = [2_000_000.0 / (i + 1) ** 1.05 for i in range(vocab)]
    next_id = vocab
    rows = []
    for year in range(1900, 1941):
        for word, m in zip(words, mass):
            count = max(1, int(m))
            rows.append(f"{word}\t{year}\t{count}\t{1 + count // 100}")
        for _ in range(max(1, kernel // 100)):
            slot = rng.randrange(kernel)
            words[slot] = f"n{next_id:05d}"
            next_id += 1
        mass = [m * (0.93 + 0.14 * rng.random()) for m in mass]
    (ROOT / "google_sample.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    print(f"google sample: {len(rows)} rows")


# ---------------------------------------------------------------------------
# deterministic 1000-word tokenizer fixture (ASCII, no apostrophes or digit
# separators, so a naive alnum-run tokenizer agrees with the real one)

WORDS = (
    "the of and to in that it was his he with as is had for her not but at on "
    "by which have from this him they all were she or are been one their so an "
    "there will would who has more when if no out up into time man its then "
    "two like may did over such our me these some could very them first upon "
    "every great before must come day old king men said even most through "
    "where after good little down make us own say might new year long canal "
    "water river stone mountain winter summer letter garden window market "
    "bridge shadow silver evening morning harvest village journey answer "
    "question story silence music flower forest meadow castle circle"
).split()

PUNCT = [".", ",", ";", ":", "!", "?", " -- ", "(", ")", '"']


def build_tokens_fixture():
    rng = random.Random(1871)
    pieces = []
    words_emitted = 0
    sentence_len = 0
    while words_emitted < 1000:
        if rng.random() < 0.06:
            pieces.append(str(rng.randrange(0, 9999)))  # numbers are dropped
        word = rng.choice(WORDS)
        if sentence_len == 0:
            word = word.capitalize()
        pieces.append(word)
        words_emitted += 1
        sentence_len += 1
        if sentence_len >= rng.randrange(5, 14):
            pieces.append(rng.choice([". ", "! ", "? "]).strip() + "\n")
            sentence_len = 0
        elif rng.random() < 0.12:
            pieces.append(rng.choice([",", ";", ":"]))
    text = ""
    for piece in pieces:
        if piece and (piece[0] in ".,;:!?" or piece.startswith("\n")):
            text = text.rstrip() + piece + " "
        else:
            text += piece + " "
    (ROOT / "tokens_1000.txt").write_text(text.rstrip() + "\n", encoding="utf-8")
    print("tokens_1000.txt written")


if __name__ == "__main__":
    build_tokens_fixture()
    build_google_sample()
    build_english()
    build_style()
