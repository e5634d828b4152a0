import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fastexp.blockseries import (
    BlockSeries,
    block_product,
    cache_transform,
    delta,
    delta_k_apply,
    delta_k_inverse,
    join_blocks,
    split_blocks,
)
from fastexp.errors import CacheError, MissingTransformError, NonIntegrableConstantError
from fastexp.oracle import naive_mul
from fastexp.transform import FftContext


def cached(ctx, f, m, nblocks):
    b = split_blocks(f, m, nblocks)
    for k in range(nblocks):
        cache_transform(ctx, b, k)
    return b


class TestSplitJoin:
    def test_split(self):
        b = split_blocks([1, 2, 3, 4, 5], 2, 3)
        assert b.coeffs.tolist() == [[1, 2], [3, 4], [5, 0]]

    def test_split_empty(self):
        b = split_blocks([], 4, 2)
        assert len(b) == 2 and not b.coeffs.any()

    def test_unit_blocks(self):
        assert split_blocks([1, 2, 3], 1, 3).coeffs.tolist() == [[1], [2], [3]]

    def test_overflow_is_an_error(self):
        with pytest.raises(ValueError):
            split_blocks(np.ones(7), 2, 3)

    def test_join(self):
        b = BlockSeries(2, 2)
        b.set_block(0, [1, 1])
        assert join_blocks(b).tolist() == [1, 1, 0, 0]
        assert join_blocks(BlockSeries(3, 0)).tolist() == []

    def test_roundtrip_is_bitwise(self, rng):
        f = rng.normal(size=17) + 1j * rng.normal(size=17)
        out = join_blocks(split_blocks(f, 4, 5))
        assert len(out) == 20
        assert np.array_equal(out[:17], f) and not out[17:].any()


class TestCacheTransform:
    def test_value_and_count(self):
        ctx = FftContext([4])
        b = split_blocks([1, 0], 2, 1)
        cache_transform(ctx, b, 0)
        np.testing.assert_allclose(b.transforms[0], [1, 1, 1, 1])
        assert ctx.counters.forward[4] == 1

    def test_out_of_range(self):
        ctx = FftContext([4])
        with pytest.raises(CacheError):
            cache_transform(ctx, BlockSeries(2, 3), 5)

    def test_write_once(self):
        ctx = FftContext([4])
        b = BlockSeries(2, 1)
        cache_transform(ctx, b, 0)
        with pytest.raises(CacheError):
            cache_transform(ctx, b, 0)
        with pytest.raises(CacheError):
            b.set_block(0, [1, 2])
        assert ctx.counters.total() == 1


class TestBlockProduct:
    def test_constant_one(self):
        ctx = FftContext([4])
        one = cached(ctx, [1], 2, 1)
        np.testing.assert_allclose(block_product(ctx, one, one, 0), [1, 0], atol=1e-15)

    def test_carry_and_diagonal(self):
        ctx = FftContext([4])
        f = [1, 1, 1, 1]
        a = cached(ctx, f, 2, 2)
        expected = naive_mul(f, f, 7)[2:4]
        assert expected.tolist() == [3, 4]
        np.testing.assert_allclose(block_product(ctx, a, a, 1), expected, atol=1e-14)

    def test_pure_carry(self):
        ctx = FftContext([4])
        a = cached(ctx, [0, 1], 2, 2)
        expected = naive_mul([0, 1], [0, 1], 4)[2:4]
        assert expected.tolist() == [1, 0]
        np.testing.assert_allclose(block_product(ctx, a, a, 1), expected, atol=1e-15)

    def test_one_inverse_no_forward(self, rng):
        ctx = FftContext([8])
        a = cached(ctx, rng.normal(size=12), 4, 3)
        before = ctx.counters.copy()
        block_product(ctx, a, a, 2)
        spent = ctx.counters - before
        assert spent.forward[8] == 0 and spent.inverse[8] == 1

    def test_missing_cache(self):
        ctx = FftContext([4])
        a = cached(ctx, [1, 2, 3, 4], 2, 2)
        b = split_blocks([1, 2, 3, 4], 2, 2)
        cache_transform(ctx, b, 0)
        with pytest.raises(MissingTransformError):
            block_product(ctx, a, b, 1)

    def test_truncated_operands(self, rng):
        # a_len / b_len treat the tail as zero
        ctx = FftContext([8])
        f = rng.normal(size=16) + 1j * rng.normal(size=16)
        g = rng.normal(size=16) + 1j * rng.normal(size=16)
        a, b = cached(ctx, f, 4, 4), cached(ctx, g, 4, 4)
        expected = naive_mul(f[:8], g[:12], 16)[8:12]
        np.testing.assert_allclose(block_product(ctx, a, b, 2, a_len=2, b_len=3), expected, atol=1e-12)

    @pytest.mark.parametrize("m", [2, 4, 8])
    @pytest.mark.parametrize("nblocks", [1, 2, 3, 6])
    def test_every_block_matches_naive_product(self, m, nblocks, rng):
        ctx = FftContext([2 * m])
        n = nblocks * m
        f = rng.uniform(-3, 3, n) + 1j * rng.uniform(-3, 3, n)
        g = rng.uniform(-3, 3, n) + 1j * rng.uniform(-3, 3, n)
        # explicit zero blocks cover the upper half of the product
        a, b = cached(ctx, f, m, 2 * nblocks), cached(ctx, g, m, 2 * nblocks)
        full = naive_mul(f, g, 2 * n)
        scale = 1 + max(np.abs(f).max(), np.abs(g).max())
        for k in range(2 * nblocks):
            got = block_product(ctx, a, b, k)
            assert np.abs(got - full[k * m : (k + 1) * m]).max() <= 1e-9 * scale


class TestDelta:
    def test_delta(self):
        assert delta([1, 2, 3]).tolist() == [0, 2, 6]
        assert delta([0, 1]).tolist() == [0, 1]
        assert delta([7]).tolist() == [0]

    def test_delta_k_apply(self):
        a, b = 1.5 - 2j, 0.25 + 1j
        np.testing.assert_array_equal(delta_k_apply([a, b], 1), [2 * a, 3 * b])
        np.testing.assert_array_equal(delta_k_apply([a, b], 0), [0, b])
        assert not delta_k_apply(np.zeros(4), 7).any()

    def test_delta_k_matches_series_delta(self, rng):
        m, k = 4, 3
        block = rng.normal(size=m)
        shifted = np.concatenate([np.zeros(k * m), block])
        np.testing.assert_array_equal(delta(shifted)[k * m :], delta_k_apply(block, k))

    def test_delta_k_inverse(self):
        np.testing.assert_array_equal(delta_k_inverse([2, 3], 1), [1, 1])
        np.testing.assert_array_equal(delta_k_inverse([0, 5], 0), [0, 5])
        with pytest.raises(NonIntegrableConstantError):
            delta_k_inverse([1, 0], 0)

    @pytest.mark.parametrize("k", [0, 1, 2, 9])
    def test_inverse_roundtrip(self, k, rng):
        b = rng.normal(size=8) + 1j * rng.normal(size=8)
        if k == 0:
            b[0] = 0
        assert np.abs(delta_k_inverse(delta_k_apply(b, k), k) - b).max() < 1e-13
        assert np.abs(delta_k_apply(delta_k_inverse(b, k), k) - b).max() < 1e-13

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=2**32 - 1))
    def test_delta_is_a_derivation(self, seed):
        r = np.random.default_rng(seed)
        f = r.normal(size=9) + 1j * r.normal(size=9)
        g = r.normal(size=9) + 1j * r.normal(size=9)
        n = 17
        lhs = delta(naive_mul(f, g, n))
        rhs = naive_mul(delta(f), g, n) + naive_mul(f, delta(g), n)
        assert np.abs(lhs - rhs).max() <= 1e-10 * (1 + np.abs(lhs).max())
