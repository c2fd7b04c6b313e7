"""Points of the rectilinear-embedding operads, their composition and discrete invariants.

Colors and the piece each one lives on:

    D1, M    interval (0,1)
    D        square (0,1)^2
    C, C_M   cylinder (0,1) x S^1

A component of an embedding is a list of per-axis affine maps ``x -> a x + b``.
Intervals have one axis, squares two.  A cylinder source has a radial axis and an
angular axis with ``a = 1`` and ``b = r`` the rotation.  When the target is a
cylinder the last axis is angular and its offset is read mod 1.  Everything is a
``Fraction``, so containment and disjointness are decided exactly.

Components of color ``M`` or ``C_M`` landing in a target of the same color must be
shrinking (``b = 0`` on the non-angular axes).  On a cylinder a shrinking map may
still rotate; ``strict=True`` also forces ``r = 0``.
"""
from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction

INTERVAL = "interval"
SQUARE = "square"
CYLINDER = "cylinder"
PIECES = (INTERVAL, SQUARE, CYLINDER)

COLOR_PIECE = {"D1": INTERVAL, "M": INTERVAL, "D": SQUARE, "C": CYLINDER, "C_M": CYLINDER}
MODULE_COLORS = {"M": "M", "C_M": "C_M"}

OPERADS = {
    "E1": ("D1",),
    "E1bar": ("D1", "M"),
    "Cyl": ("C",),
    "Cylbar": ("C", "C_M"),
    "DCyl": ("D", "C"),
    "DCylbar": ("D", "C", "C_M"),
    "KS": ("D", "C_M"),
}


class OperadError(ValueError):
    pass


@dataclass(frozen=True)
class Piece:
    kind: str

    def __post_init__(self):
        if self.kind not in PIECES:
            raise OperadError(f"unknown piece kind {self.kind!r}")

    @property
    def axes(self) -> int:
        return 1 if self.kind == INTERVAL else 2

    @property
    def angular(self) -> bool:
        return self.kind == CYLINDER


def piece_of(color: str) -> Piece:
    try:
        return Piece(COLOR_PIECE[color])
    except KeyError:
        raise OperadError(f"unknown color {color!r}") from None


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------- emptiness rules

def _counts(inputs) -> dict:
    c = {k: 0 for k in COLOR_PIECE}
    for x in inputs:
        c[x] += 1
    return c


def mult_nonempty(inputs, output: str) -> bool:
    """Whether ``Mult(inputs, output)`` is nonempty in the largest operad carrying these colors.

    Intervals and squares/cylinders never mix, so a word is either in ``E1bar``
    or in ``DCylbar``.
    """
    c = _counts(inputs)
    one_dim = c["D1"] + c["M"]
    two_dim = c["D"] + c["C"] + c["C_M"]
    if output in ("D1", "M"):
        if two_dim:
            return False
        return c["M"] == 0 if output == "D1" else c["M"] == 1
    if one_dim:
        return False
    if output == "D":
        return c["C"] + c["C_M"] == 0
    if output == "C":
        return c["C_M"] == 0
    return c["C_M"] == 1


@dataclass(frozen=True)
class KSColorWord:
    inputs: tuple
    output: str

    def __str__(self):
        return f"{','.join(self.inputs) or '()'}->{self.output}"


def check_word(w: KSColorWord, operad: str) -> None:
    if operad not in OPERADS:
        raise OperadError(f"unknown operad {operad!r}; expected one of {', '.join(OPERADS)}")
    colors = OPERADS[operad]
    for x in tuple(w.inputs) + (w.output,):
        if x not in colors:
            raise OperadError(f"color {x} does not belong to {operad}")


def ks_arity_nonempty(w: KSColorWord, operad: str = "KS") -> bool:
    """True iff the multimorphism space of ``w`` in ``operad`` is nonempty.

    Every operad in :data:`OPERADS` is a full suboperad of ``E1bar`` or
    ``DCylbar``, so the answer only depends on the word.
    """
    check_word(w, operad)
    return mult_nonempty(w.inputs, w.output)


def color_words(operad: str, max_arity: int):
    """All words with inputs sorted by color order, ``0 <= arity <= max_arity``."""
    colors = OPERADS[operad]
    for n in range(max_arity + 1):
        for ins in itertools.combinations_with_replacement(colors, n):
            for out in colors:
                yield KSColorWord(tuple(ins), out)


def arity_table(operad: str, max_arity: int = 4) -> list:
    return [{"operad": operad, "inputs": list(w.inputs), "output": w.output,
             "nonempty": ks_arity_nonempty(w, operad)} for w in color_words(operad, max_arity)]


def render_arity_table(rows: list) -> str:
    lines = []
    for r in rows:
        ins = ",".join(r["inputs"]) or "-"
        lines.append(f"{r['operad']:8} {ins:24} -> {r['output']:4} {'nonempty' if r['nonempty'] else 'empty'}")
    return "\n".join(lines)


# ---------------------------------------------------------------- embeddings

@dataclass(frozen=True)
class Component:
    """Per-axis affine parameters ``((a_1, b_1), ..)``."""
    axes: tuple

    @property
    def radial(self) -> tuple:
        return self.axes[0]


def _arc_disjoint(b1, a1, b2, a2) -> bool:
    if a1 >= 1 or a2 >= 1:
        return False
    return (b2 - b1) % 1 >= a1 and (b1 - b2) % 1 >= a2


class RectEmbedding:
    """A point of ``Mult(source colors, target color)``."""

    __slots__ = ("source", "target", "components", "strict")

    def __init__(self, source, target: str, components, strict: bool = False, check: bool = True):
        self.source = tuple(source)
        self.target = target
        comps = []
        for c in components:
            axes = c.axes if isinstance(c, Component) else c
            comps.append(Component(tuple((_q(a), _q(b)) for a, b in axes)))
        self.components = tuple(comps)
        self.strict = strict
        if check:
            self.validate()

    # -- validation
    def _component_ok(self, i: int) -> None:
        color = self.source[i]
        src, tgt = piece_of(color), piece_of(self.target)
        axes = self.components[i].axes
        if src.axes != tgt.axes or (src.angular and not tgt.angular):
            raise OperadError(f"a {src.kind} does not embed rectilinearly in a {tgt.kind}")
        if len(axes) != src.axes:
            raise OperadError(f"component {i} needs {src.axes} axes, got {len(axes)}")
        for k, (a, b) in enumerate(axes):
            ang = tgt.angular and k == src.axes - 1
            if not 0 < a <= 1:
                raise OperadError(f"component {i} axis {k}: scale {a} not in (0,1]")
            if ang:
                if src.angular and a != 1:
                    raise OperadError(f"component {i}: a cylinder maps its circle by a rotation")
                if not 0 <= b < 1:
                    raise OperadError(f"component {i}: angular offset {b} not reduced mod 1")
            elif b < 0 or a + b > 1:
                raise OperadError(f"component {i} axis {k}: image ({b}, {a + b}) leaves (0,1)")
        if color in MODULE_COLORS and self.target == color:
            non_angular = axes[:-1] if tgt.angular else axes
            if any(b != 0 for _, b in non_angular):
                raise OperadError(f"component {i} of color {color} must be shrinking")
            if self.strict and tgt.angular and axes[-1][1] != 0:
                raise OperadError(f"component {i}: strict shrinking forbids rotation")

    def _boxes_disjoint(self, i: int, j: int) -> bool:
        ang = piece_of(self.target).angular
        ci, cj = self.components[i].axes, self.components[j].axes
        for k in range(len(ci)):
            (a1, b1), (a2, b2) = ci[k], cj[k]
            if ang and k == len(ci) - 1:
                if _arc_disjoint(b1, a1, b2, a2):
                    return True
            elif b1 + a1 <= b2 or b2 + a2 <= b1:
                return True
        return False

    def validate(self) -> None:
        for x in self.source + (self.target,):
            piece_of(x)
        if len(self.components) != len(self.source):
            raise OperadError("one parameter set per source component is required")
        if not mult_nonempty(self.source, self.target):
            raise OperadError(f"Mult({','.join(self.source)}; {self.target}) is empty")
        for i in range(len(self.source)):
            self._component_ok(i)
        for i, j in itertools.combinations(range(len(self.source)), 2):
            if not self._boxes_disjoint(i, j):
                raise OperadError(f"images of components {i} and {j} overlap")

    # -- basics
    @property
    def arity(self) -> int:
        return len(self.source)

    def is_shrinking(self, i: int) -> bool:
        axes = self.components[i].axes
        ang = piece_of(self.target).angular
        lin = axes[:-1] if ang else axes
        return all(b == 0 for _, b in lin) and not (self.strict and ang and axes[-1][1] != 0)

    def rotation(self, i: int) -> Fraction:
        """Angular offset of component ``i`` in ``Q/Z`` (cylinder targets only)."""
        if not piece_of(self.target).angular:
            raise OperadError("rotation classes only exist for cylinder targets")
        return self.components[i].axes[-1][1] % 1

    def __eq__(self, other):
        return (isinstance(other, RectEmbedding) and self.source == other.source
                and self.target == other.target and self.components == other.components)

    def __hash__(self):
        return hash((self.source, self.target, self.components))

    def __str__(self):
        comps = " ".join("[" + ", ".join(f"{a} {b}" for a, b in c.axes) + "]" for c in self.components)
        return f"{','.join(self.source)}->{self.target}: {comps}".rstrip(": ").rstrip()

    def __repr__(self):
        return f"RectEmbedding({str(self)!r})"


_LIT = re.compile(r"^\s*([\w,\s]*)->\s*(\w+)\s*(?::(.*))?$")


def parse_embedding(text: str, strict: bool = False) -> RectEmbedding:
    """``"D,C_M->C_M: [1/4 1/2, 1/3 0] [1/2 0, 1 1/3]"``; one bracket per component, ``a b`` per axis."""
    m = _LIT.match(text)
    if not m:
        raise OperadError(f"cannot parse embedding literal {text!r}")
    source = [x.strip() for x in m.group(1).split(",") if x.strip()]
    comps = []
    for body in re.findall(r"\[([^\]]*)\]", m.group(3) or ""):
        axes = []
        for ax in body.split(","):
            parts = ax.split()
            if len(parts) != 2:
                raise OperadError(f"axis {ax.strip()!r} should read 'a b'")
            axes.append((Fraction(parts[0]), Fraction(parts[1])))
        comps.append(axes)
    return RectEmbedding(source, m.group(2), comps, strict=strict)


def identity(color: str) -> RectEmbedding:
    p = piece_of(color)
    return RectEmbedding([color], color, [[(1, 0)] * p.axes])


def _compose_component(outer_axes, inner_axes, angular: bool) -> tuple:
    out = []
    for k, ((a, b), (a2, b2)) in enumerate(zip(outer_axes, inner_axes)):
        nb = a * b2 + b
        if angular and k == len(outer_axes) - 1:
            nb %= 1
        out.append((a * a2, nb))
    return tuple(out)


def compose(outer: RectEmbedding, inners: list) -> RectEmbedding:
    """Operadic composition: ``inners[i]`` is plugged into source component ``i`` of ``outer``."""
    if len(inners) != outer.arity:
        raise OperadError(f"outer has arity {outer.arity} but {len(inners)} inner embeddings were given")
    ang = piece_of(outer.target).angular
    source, comps = [], []
    for i, g in enumerate(inners):
        if g.target != outer.source[i]:
            raise OperadError(f"inner {i} lands in {g.target}, outer expects {outer.source[i]}")
        for c, comp in zip(g.source, g.components):
            source.append(c)
            comps.append(_compose_component(outer.components[i].axes, comp.axes, ang))
    try:
        return RectEmbedding(source, outer.target, comps, strict=outer.strict)
    except OperadError as e:
        raise OperadError(f"internal error: composite is not an embedding ({e})") from e


def relabel(e: RectEmbedding, perm) -> RectEmbedding:
    """Action of a permutation: new component ``k`` is old component ``perm[k]``."""
    return RectEmbedding([e.source[i] for i in perm], e.target, [e.components[i] for i in perm], strict=e.strict)


def block_permutation(perm, sizes) -> list:
    """The permutation of a composite induced by permuting its blocks of given sizes."""
    starts = [sum(sizes[:i]) for i in range(len(sizes))]
    return [starts[i] + k for i in perm for k in range(sizes[i])]


# ---------------------------------------------------------------- discrete invariants

def pi0_order(e: RectEmbedding) -> tuple:
    """Source components listed from left to right by image position."""
    if piece_of(e.target).kind != INTERVAL:
        raise OperadError("pi0_order needs interval pieces")
    return tuple(sorted(range(e.arity), key=lambda i: e.components[i].radial[1]))


def insert_orders(outer: tuple, inners: list) -> tuple:
    """Composition in the associative operad: substitute each inner order for its slot."""
    sizes = [len(o) for o in inners]
    starts = [sum(sizes[:i]) for i in range(len(sizes))]
    out = []
    for i in outer:
        out.extend(starts[i] + k for k in inners[i])
    return tuple(out)


def cylinder_invariant(e: RectEmbedding) -> tuple:
    """``(radial order of the cylinder components, rotation class of every component)``.

    Cylinder components have full angular image, so their radial projections are
    disjoint and ordered.  Square components carry their angular offset.
    """
    if not piece_of(e.target).angular:
        raise OperadError("cylinder_invariant needs a cylinder target")
    cyl = [i for i in range(e.arity) if piece_of(e.source[i]).angular]
    order = tuple(sorted(cyl, key=lambda i: e.components[i].radial[1]))
    return order, tuple(e.rotation(i) for i in range(e.arity))


def compose_cylinder_invariants(outer: tuple, inners: list, outer_source, inner_sources) -> tuple:
    """Expected invariant of a composite from the invariants of its parts.

    ``inners[i]`` is ``None`` for inner embeddings into a square; those contribute
    no cylinder components and their rotation classes are not determined by the
    parts (reported as ``None``).
    """
    order_o, rot_o = outer
    sizes = [len(s) for s in inner_sources]
    starts = [sum(sizes[:i]) for i in range(len(sizes))]
    order = []
    for i in order_o:
        order.extend(starts[i] + k for k in inners[i][0])
    rots = []
    for i, inv in enumerate(inners):
        if inv is None:
            rots.extend([None] * sizes[i])
        else:
            rots.extend((rot_o[i] + r) % 1 for r in inv[1])
    return tuple(order), tuple(rots)


def cylinder_invariant_or_none(e: RectEmbedding):
    return cylinder_invariant(e) if piece_of(e.target).angular else None


# ---------------------------------------------------------------- witnesses and sampling

def witness(inputs, output: str) -> RectEmbedding:
    """Canonical point of a nonempty ``Mult``: equispaced rational slots, no rotation.

    Module components go to the slot at the origin so they can be shrinking.
    """
    inputs = list(inputs)
    if not mult_nonempty(inputs, output):
        raise OperadError(f"Mult({','.join(inputs)}; {output}) is empty")
    tgt = piece_of(output)
    n = len(inputs)
    comps: list = [None] * n
    first = [i for i, c in enumerate(inputs) if c in MODULE_COLORS]
    rest = [i for i in range(n) if i not in first]
    if tgt.kind in (INTERVAL, SQUARE):
        for slot, i in enumerate(first + rest):
            ax = (Fraction(1, n), Fraction(slot, n))
            comps[i] = [ax] if tgt.kind == INTERVAL else [ax, (1, 0)]
        return RectEmbedding(inputs, output, comps)
    cyl = first + [i for i in rest if inputs[i] == "C"]
    sq = [i for i in rest if inputs[i] == "D"]
    bands = len(cyl) + (1 if sq else 0)
    for slot, i in enumerate(cyl):
        comps[i] = [(Fraction(1, bands), Fraction(slot, bands)), (1, 0)]
    for k, i in enumerate(sq):
        comps[i] = [(Fraction(1, bands), Fraction(bands - 1, bands)), (Fraction(1, len(sq)), Fraction(k, len(sq)))]
    return RectEmbedding(inputs, output, comps)


def _rand_q(rng: random.Random, lo: Fraction, hi: Fraction, den: int = 12) -> Fraction:
    """Rational in ``[lo, hi]`` with a small denominator on top of the bounds."""
    t = Fraction(rng.randint(0, den), den)
    return lo + (hi - lo) * t


def _sub_box(rng, lo: Fraction, hi: Fraction, anchored: bool) -> tuple:
    width = hi - lo
    a = width * Fraction(rng.randint(1, 6), 6)
    b = lo if anchored else lo + (width - a) * Fraction(rng.randint(0, 6), 6)
    return a, b


def random_embedding(rng: random.Random, inputs, output: str, strict: bool = False) -> RectEmbedding:
    """A random point of ``Mult(inputs, output)``: shuffled slots, random sub-boxes and rotations."""
    inputs = list(inputs)
    if not mult_nonempty(inputs, output):
        raise OperadError(f"Mult({','.join(inputs)}; {output}) is empty")
    tgt = piece_of(output)
    n = len(inputs)
    comps: list = [None] * n
    mod = [i for i, c in enumerate(inputs) if c in MODULE_COLORS and c == output]
    others = [i for i in range(n) if i not in mod]
    rng.shuffle(others)
    order = mod + others
    if tgt.kind in (INTERVAL, SQUARE):
        cuts = sorted(rng.sample(range(1, 24), n - 1)) if n > 1 else []
        edges = [Fraction(0)] + [Fraction(c, 24) for c in cuts] + [Fraction(1)]
        for slot, i in enumerate(order):
            ax = _sub_box(rng, edges[slot], edges[slot + 1], i in mod)
            if tgt.kind == INTERVAL:
                comps[i] = [ax]
            else:
                comps[i] = [ax, _sub_box(rng, Fraction(0), Fraction(1), False)]
        return RectEmbedding(inputs, output, comps, strict=strict)
    cyl = mod + [i for i in others if inputs[i] != "D"]
    sq = [i for i in others if inputs[i] == "D"]
    # radial bands: one per cylinder component, squares share bands at random
    nb = len(cyl) + (1 if sq else 0)
    cuts = sorted(rng.sample(range(1, 24), nb - 1)) if nb > 1 else []
    edges = [Fraction(0)] + [Fraction(c, 24) for c in cuts] + [Fraction(1)]
    for slot, i in enumerate(cyl):
        rot = Fraction(0) if (strict and i in mod) else Fraction(rng.randint(0, 11), 12)
        comps[i] = [_sub_box(rng, edges[slot], edges[slot + 1], i in mod), (1, rot)]
    if sq:
        lo, hi = edges[nb - 1], edges[nb]
        start = Fraction(rng.randint(0, 11), 12)
        width = Fraction(1, len(sq))
        for k, i in enumerate(sq):
            a, b = _sub_box(rng, Fraction(0), width, False)
            comps[i] = [_sub_box(rng, lo, hi, False), (a, (start + k * width + b) % 1)]
    return RectEmbedding(inputs, output, comps, strict=strict)


def random_triple(rng: random.Random, operad: str, max_arity: int = 3):
    """``(h, gs, fs)`` with ``h o gs`` and ``(h o gs) o fs`` both defined, inside ``operad``."""
    colors = OPERADS[operad]

    def word(out: str) -> list:
        for _ in range(200):
            ins = [rng.choice(colors) for _ in range(rng.randint(0, max_arity))]
            if mult_nonempty(ins, out):
                return ins
        return [out]

    out = rng.choice(colors)
    h = random_embedding(rng, word(out), out)
    gs = [random_embedding(rng, word(c), c) for c in h.source]
    mid = [c for g in gs for c in g.source]
    fs = [random_embedding(rng, word(c), c) for c in mid]
    return h, gs, fs


def split(seq: list, sizes) -> list:
    out, k = [], 0
    for s in sizes:
        out.append(seq[k:k + s])
        k += s
    return out


def associativity_holds(h: RectEmbedding, gs: list, fs: list) -> bool:
    left = compose(compose(h, gs), fs)
    right = compose(h, [compose(g, part) for g, part in zip(gs, split(fs, [g.arity for g in gs]))])
    return left == right


def unitality_holds(e: RectEmbedding) -> bool:
    return (compose(identity(e.target), [e]) == e
            and compose(e, [identity(c) for c in e.source]) == e)


def equivariance_holds(h: RectEmbedding, gs: list, perm) -> bool:
    """``(h.perm) o (gs permuted) = (h o gs).block(perm)``."""
    lhs = compose(relabel(h, perm), [gs[i] for i in perm])
    rhs = relabel(compose(h, gs), block_permutation(perm, [g.arity for g in gs]))
    return lhs == rhs


def achievable_orders(n: int, samples: int = 0, seed: int = 0) -> set:
    """Orders realized by canonical representatives (and optionally random points)."""
    seen = set()
    for perm in itertools.permutations(range(n)):
        comps = [None] * n
        for slot, i in enumerate(perm):
            comps[i] = [(Fraction(1, n), Fraction(slot, n))] if n else []
        seen.add(pi0_order(RectEmbedding(["D1"] * n, "D1", comps)))
    rng = random.Random(seed)
    for _ in range(samples):
        seen.add(pi0_order(random_embedding(rng, ["D1"] * n, "D1")))
    return seen


def order_count_ok(n: int) -> bool:
    return len(achievable_orders(n)) == math.factorial(n)
