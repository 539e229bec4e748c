"""Random test instances with known normal form."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .automorph import AutoWord, apply_to_map, random_tame
from .errors import InvalidParams
from .maps import PolyMap
from .normalize import NormalForm, TypeI, TypeII, TypeIII, normal_form_from_json


@dataclass(frozen=True)
class Instance:
    """``map == post_word o ground_truth.map() o pre_word``."""

    map: PolyMap
    ground_truth: NormalForm
    pre_word: AutoWord
    post_word: AutoWord
    seed: int

    def check(self) -> bool:
        expected = apply_to_map(self.pre_word, self.ground_truth.map(), self.post_word)
        return expected.f1 == self.map.f1 and expected.f2 == self.map.f2

    def to_json(self) -> dict:
        return {**self.map.to_json(), "ground_truth": self.ground_truth.to_json(),
                "pre_word": self.pre_word.to_json(), "post_word": self.post_word.to_json(),
                "seed": self.seed}

    @classmethod
    def from_json(cls, data: dict) -> "Instance":
        return cls(PolyMap.parse(data["f1"], data["f2"]), normal_form_from_json(data["ground_truth"]),
                   AutoWord.from_json(data["pre_word"]), AutoWord.from_json(data["post_word"]),
                   int(data.get("seed", 0)))


def make_normal_form(kind: str, d: int, m: Optional[int] = None, n: Optional[int] = None,
                     a=None) -> NormalForm:
    kind = kind.lower()
    try:
        if kind == "i":
            return TypeI(d)
        if kind == "ii":
            return TypeII(d, m)
        if kind == "iii":
            return TypeIII(d, m, n, tuple(Fraction(c) for c in a))
    except TypeError as exc:
        raise InvalidParams(f"missing parameters for type {kind}: {exc}") from exc
    raise InvalidParams(f"unknown type {kind!r}; expected i, ii or iii")


def generate_instance(kind: str, params: dict, seed: int, word_len: int = 2, deg_bound: int = 3,
                      coeff_bound: int = 3, max_degree: Optional[int] = None) -> Instance:
    """Normal form of the given type and parameters hidden behind two random tame words.

    With ``max_degree`` the words are redrawn (from seeds derived from
    ``seed``) until the map has total degree at most ``max_degree``.
    """
    nf = make_normal_form(kind, **params)
    rng = random.Random(seed)
    base = nf.map()
    for _ in range(1000):
        pre = random_tame(rng.getrandbits(64), word_len, deg_bound, coeff_bound)
        post = random_tame(rng.getrandbits(64), word_len, deg_bound, coeff_bound)
        f = apply_to_map(pre, base, post)
        if max_degree is None or f.total_degree() <= max_degree:
            return Instance(f, nf, pre, post, seed)
    raise InvalidParams(f"no words within degree {max_degree} for {nf}")


def random_params(kind: str, rng: random.Random, max_d: int = 5, max_mn: int = 3,
                  coeff_range: int = 3) -> dict:
    """Random valid parameters for a normal form type."""
    kind = kind.lower()
    if kind == "i":
        return {"d": rng.randint(2, max_d)}
    if kind == "ii":
        return {"d": rng.randint(1, max_d), "m": rng.randint(1, max_mn)}
    while True:
        d, m, n = rng.randint(2, max_d), rng.randint(1, max_mn), rng.randint(1, max_mn)
        if m % d == 0:
            continue
        a = []
        for i in range(n):
            if (i + m) % d == 0:
                a.append(0)
            elif i == 0:
                a.append(rng.choice([c for c in range(-coeff_range, coeff_range + 1) if c]))
            else:
                a.append(rng.randint(-coeff_range, coeff_range))
        return {"d": d, "m": m, "n": n, "a": a}
