#!/usr/bin/env python3
"""The expression language and identity suite, driven from Python.

Everything the ``diracobs`` command line does is a thin wrapper over the
functions used here: parse an expression, evaluate it to a normal form,
render it, and run manifest entries.
"""

from diracobs import eval_text, parse, render_expr
from diracobs import suite

print("Parsing round-trips through the deterministic renderer:")
node = parse("comm(Xh[1],Xh[2]) - S[1,2]*Minv2")
print("input  :", "comm(Xh[1],Xh[2]) - S[1,2]*Minv2")
print("render :", render_expr(node))
print("reparse equal:", parse(render_expr(node)) == node)
print()

print("Evaluation reduces to a canonical normal form:")
print("value  :", eval_text("comm(Xh[1],Xh[2]) - S[1,2]*Minv2").render())
print()

print("Series nodes thread a truncation order:")
print("conj(M; order=1) =")
print(eval_text("conj(M; order=1)"))
print()

print("A miniature manifest, including one deliberately broken entry:")
text = """
demo.mass   := M*M == P2 @ exact
demo.spin   := W2*Minv2 == -3/4*hbar^2 @ exact
demo.broken := comm(D, M) == -M @ exact
demo.series := conjinv(conj(M; order=2); order=2) == M @ exact
"""
entries = suite.parse_manifest(text)
report = suite.run_suite(entries)
print(suite.report_markdown(report))
print()

print("The shipped manifest covers every identity of the model:")
full = suite.parse_manifest(suite.load_default_manifest())
by_tag = {}
for e in full:
    by_tag[e.tag] = by_tag.get(e.tag, 0) + 1
print(len(full), "entries by section:", dict(sorted(by_tag.items())))
