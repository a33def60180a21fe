"""The compiled and pure table-search kernels must agree exactly."""

import pytest
from hypothesis import given, settings, strategies as st

from fourtops._kernels import BACKEND
from fourtops._kernels import pure
from fourtops.heyting import HeytingAlgebra
from fourtops.poset import Poset

try:
    from fourtops._kernels import _fast
except ImportError:
    _fast = None


def lattice_inputs(poset):
    algebra = HeytingAlgebra(poset)
    return len(algebra), algebra.up_masks(), algebra.meet_table()


@st.composite
def small_posets(draw):
    n = draw(st.integers(min_value=0, max_value=4))
    points = [f"p{i}" for i in range(n)]
    pairs = [(a, b) for i, a in enumerate(points) for b in points[i + 1 :]]
    arrows = {p for p in pairs if draw(st.booleans())}
    return Poset(points, arrows)


class TestPureKernel:
    def test_single_element_lattice(self):
        assert pure.enumerate_operator_tables(
            1, (1,), (0,), inflationary=True, top_fixed=False
        ) == [(0,)]

    def test_two_chain_nucleus_tables(self):
        # lattice 0 < 1: inflationary idempotent meet-preserving maps
        got = pure.enumerate_operator_tables(
            2, (0b11, 0b10), (0, 0, 0, 1), inflationary=True, top_fixed=False
        )
        assert got == [(0, 1), (1, 1)]

    def test_top_fixed_drops_collapse(self):
        got = pure.enumerate_operator_tables(
            2, (0b11, 0b10), (0, 0, 0, 1), inflationary=False, top_fixed=True
        )
        assert (0, 1) in got and (1, 1) in got
        assert all(t[1] == 1 for t in got)


@pytest.mark.skipif(_fast is None, reason="compiled kernel not built")
class TestBackendAgreement:
    @given(small_posets(), st.booleans(), st.booleans())
    @settings(max_examples=30, deadline=None)
    def test_same_tables_same_order(self, poset, inflationary, top_fixed):
        n, up, meet = lattice_inputs(poset)
        a = pure.enumerate_operator_tables(
            n, up, meet, inflationary=inflationary, top_fixed=top_fixed
        )
        b = _fast.enumerate_operator_tables(
            n, up, meet, inflationary=inflationary, top_fixed=top_fixed
        )
        assert a == b

    def test_backend_label_is_accurate(self):
        assert BACKEND in ("pure", "compiled")
