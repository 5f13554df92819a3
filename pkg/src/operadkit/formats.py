"""Deterministic serialization of words, trees, sums, series and tables."""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Any

from .freealg import EVBT, parse_evbt
from .lincomb import LinComb, format_coef
from .present import Presentation, SchroderTree, parse_schroder
from .series import IntSeries
from .trees import Tree, generator_set, parse_tree, to_dot
from .words import DomainError, GammaWord, parse_word

FORMATS = ("text", "json", "tsv", "dot")


def _key_kind(k: Any) -> str:
    if isinstance(k, GammaWord):
        return "word"
    if isinstance(k, Tree):
        return "tree"
    if isinstance(k, EVBT):
        return "evbt"
    if isinstance(k, SchroderTree):
        return "schroder"
    raise DomainError(f"cannot serialize key of type {type(k).__name__}")


def to_json_obj(value: Any, gens_label: str | None = None) -> Any:
    if isinstance(value, GammaWord):
        return {"gamma": value.gamma, "word": str(value)}
    if isinstance(value, Tree):
        return {"gens": gens_label, "tree": str(value)}
    if isinstance(value, EVBT):
        return {"evbt": str(value)}
    if isinstance(value, SchroderTree):
        return {"schroder": str(value)}
    if isinstance(value, Presentation):
        return presentation_to_json_obj(value)
    if isinstance(value, IntSeries):
        return {"coefficients": [c if isinstance(c, int) else format_coef(c) for c in value.coeffs]}
    if isinstance(value, LinComb):
        terms = []
        obj: dict[str, Any] = {}
        for k, c in value.items():
            kind = _key_kind(k)
            terms.append({"coef": format_coef(c), kind: str(k)})
            if kind == "word":
                obj["gamma"] = k.gamma
            elif kind == "tree":
                obj["gens"] = gens_label
        obj["terms"] = terms
        return obj
    if isinstance(value, Fraction):
        return format_coef(value)
    if isinstance(value, dict):
        return {str(k): to_json_obj(v, gens_label) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_json_obj(v, gens_label) for v in value]
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if hasattr(value, "sort_key"):
        return str(value)
    raise DomainError(f"cannot serialize {type(value).__name__} as json")


def from_json_obj(obj: Any) -> Any:
    """Inverse of to_json_obj for words, trees, sums and series."""
    if not isinstance(obj, dict):
        raise DomainError("expected a json object")
    if "relations" in obj and "gens" in obj:
        return presentation_from_json_obj(obj)
    if "terms" in obj:
        terms = []
        for t in obj["terms"]:
            c = Fraction(t["coef"])
            if "word" in t:
                terms.append((parse_word(t["word"], obj["gamma"]), c))
            elif "tree" in t:
                terms.append((parse_tree(t["tree"], _gens(obj.get("gens"))), c))
            elif "evbt" in t:
                terms.append((parse_evbt(t["evbt"]), c))
            elif "schroder" in t:
                terms.append((parse_schroder(t["schroder"]), c))
            else:
                raise DomainError(f"unrecognized term {t!r}")
        return LinComb(terms)
    if "word" in obj:
        return parse_word(obj["word"], obj["gamma"])
    if "tree" in obj:
        return parse_tree(obj["tree"], _gens(obj.get("gens")))
    if "evbt" in obj:
        return parse_evbt(obj["evbt"])
    if "schroder" in obj:
        return parse_schroder(obj["schroder"])
    if "coefficients" in obj:
        return IntSeries(tuple(_number(c) for c in obj["coefficients"]))
    raise DomainError("unrecognized json value")


def _number(text):
    if isinstance(text, int):
        return text
    f = Fraction(text)
    return f.numerator if f.denominator == 1 else f


def _gens(label: str | None):
    if not label or ":" not in label:
        raise DomainError("tree values need a 'gens' label such as dendr:2")
    fam, _, g = label.partition(":")
    return generator_set(fam, int(g))


def presentation_to_json_obj(P: Presentation) -> dict:
    return {
        "name": P.name,
        "gens": P.gens.label,
        "generators": P.gens.names(),
        "relations": [{str(t): format_coef(c) for t, c in r.items()} for r in P.relations],
    }


def presentation_from_json_obj(obj: dict) -> Presentation:
    gens = _gens(obj.get("gens"))
    if list(obj.get("generators", gens.names())) != list(gens.names()):
        raise DomainError("generator list does not match the gens label")
    rels = [LinComb((parse_tree(t, gens), Fraction(c)) for t, c in row.items()) for row in obj["relations"]]
    return Presentation(gens, rels, obj.get("name", ""))


def emit_json(value: Any, gens_label: str | None = None) -> str:
    return json.dumps(to_json_obj(value, gens_label), sort_keys=True)


def parse_json(text: str) -> Any:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid json at position {exc.pos}: {exc.msg}") from None
    return from_json_obj(obj)


def emit_text(value: Any) -> str:
    if isinstance(value, LinComb):
        return value.to_text()
    if isinstance(value, IntSeries):
        return str(value)
    if isinstance(value, dict):
        return "\n".join(f"{k}: {emit_text(v)}" for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return " ".join(emit_text(v) for v in value)
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, Fraction):
        return format_coef(value)
    return str(value)


def emit_tsv(value: Any) -> str:
    if isinstance(value, LinComb):
        return "\n".join(f"{format_coef(c)}\t{k}" for k, c in value.items())
    if isinstance(value, IntSeries):
        return "\n".join(f"{n}\t{c}" for n, c in enumerate(value.coeffs, start=1))
    if isinstance(value, dict):
        return "\n".join(f"{k}\t{emit_text(v)}" for k, v in value.items())
    if isinstance(value, (list, tuple)) and value and isinstance(value[0], (list, tuple)):
        return "\n".join("\t".join(emit_text(x) for x in row) for row in value)
    return emit_text(value)


def emit_dot(value: Any) -> str:
    if isinstance(value, Tree):
        return to_dot(value)
    if isinstance(value, EVBT):
        return evbt_dot(value)
    if isinstance(value, LinComb):
        parts = []
        for n, (k, _) in enumerate(value.items()):
            if isinstance(k, Tree):
                parts.append(to_dot(k, f"tree{n}"))
            elif isinstance(k, EVBT):
                parts.append(evbt_dot(k, f"tree{n}"))
            else:
                raise DomainError("dot output needs trees")
        return "\n".join(parts)
    raise DomainError(f"dot output is not available for {type(value).__name__}")


def evbt_dot(t: EVBT, name: str = "tree") -> str:
    lines = [f"digraph {name} {{"]
    counter = itertools.count()

    def go(node: EVBT) -> str:
        ident = f"n{next(counter)}"
        if node.leaf:
            lines.append(f"  {ident} [shape=point];")
            return ident
        lines.append(f'  {ident} [label=""];')
        for child, lab in ((node.left, node.llab), (node.right, node.rlab)):
            cid = go(child)
            attr = f' [label="{lab}"]' if lab is not None else ""
            lines.append(f"  {ident} -> {cid}{attr};")
        return ident

    go(t)
    lines.append("}")
    return "\n".join(lines)


def emit(fmt: str, value: Any, gens_label: str | None = None) -> str:
    if fmt == "text":
        return emit_text(value)
    if fmt == "json":
        return emit_json(value, gens_label)
    if fmt == "tsv":
        return emit_tsv(value)
    if fmt == "dot":
        return emit_dot(value)
    raise DomainError(f"unknown format {fmt!r}; known: {', '.join(FORMATS)}")
