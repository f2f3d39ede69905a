"""Hypothesis strategies for random finite spaces and maps."""

from __future__ import annotations

from hypothesis import strategies as st

from amalgamtop import TopSpace


def _transitive(rows: list[int]) -> list[int]:
    n = len(rows)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = rows[i]
            j = acc
            while j:
                b = j & -j
                acc |= rows[b.bit_length() - 1]
                j &= j - 1
            if acc != rows[i]:
                rows[i] = acc
                changed = True
    return rows


@st.composite
def spaces(draw, min_n: int = 1, max_n: int = 5):
    """Arbitrary finite spaces: random reflexive rows, transitively
    closed into a valid minimal-neighborhood table."""
    n = draw(st.integers(min_n, max_n))
    rows = [
        draw(st.integers(0, (1 << n) - 1)) | (1 << i) for i in range(n)
    ]
    return TopSpace(n, tuple(_transitive(rows)))


@st.composite
def t0_spaces(draw, min_n: int = 1, max_n: int = 5):
    """Random T0 spaces: monotone rows over a drawn point order keep the
    specialization preorder antisymmetric, then a relabeling mixes which
    indices sit high or low."""
    n = draw(st.integers(min_n, max_n))
    rows = [1 << i for i in range(n)]
    for i in range(n):
        extra = draw(st.integers(0, (1 << n) - 1))
        rows[i] |= extra & ~((1 << (i + 1)) - 1)
    rows = _transitive(rows)
    perm = draw(st.permutations(range(n)))
    out = [0] * n
    for i in range(n):
        row = 0
        for j in range(n):
            if (rows[i] >> j) & 1:
                row |= 1 << perm[j]
        out[perm[i]] = row
    return TopSpace(n, tuple(out))


@st.composite
def space_maps(draw, max_n: int = 4):
    """A pair of spaces with an arbitrary (not necessarily continuous)
    total map between them."""
    dom = draw(spaces(max_n=max_n))
    cod = draw(spaces(max_n=max_n))
    values = tuple(
        draw(st.integers(0, cod.n - 1)) for _ in range(dom.n)
    )
    return dom, cod, values
