"""Perturbation-set generation: grids, image translation, composites."""
import numpy as np
import pytest

from masks import (AffineGrid, Composite, EpsilonGrid, Explicit, InputPoint,
                   generate_perturbations, translate_image)
from masks.errors import InvalidSpec, ShapeMissing

from oracles import scalar_translate


def square(n: int, seed: int = 0) -> InputPoint:
    rng = np.random.default_rng(seed)
    return InputPoint(rng.random(n * n).astype(np.float32), (n, n))


class TestInputPoint:
    def test_rejects_non_finite(self):
        with pytest.raises(InvalidSpec):
            InputPoint(np.array([1.0, np.nan], dtype=np.float32))

    def test_rejects_empty_and_2d(self):
        with pytest.raises(InvalidSpec):
            InputPoint(np.array([], dtype=np.float32))
        with pytest.raises(InvalidSpec):
            InputPoint(np.zeros((2, 2), dtype=np.float32))

    def test_shape_must_match_size(self):
        with pytest.raises(InvalidSpec):
            InputPoint(np.zeros(5, dtype=np.float32), (2, 2))

    def test_features_are_frozen(self):
        p = InputPoint(np.array([1.0, 2.0], dtype=np.float32))
        with pytest.raises(ValueError):
            p.features[0] = 9.0

    def test_image_requires_shape(self):
        with pytest.raises(ShapeMissing):
            InputPoint(np.zeros(4, dtype=np.float32)).image()


class TestAffineGrid:
    def test_five_step_grid_has_five_images(self):
        x0 = square(28)
        pts = generate_perturbations(x0, AffineGrid(-0.2, 0.2, 5))
        assert len(pts) == 5
        assert pts[0] is x0  # t=0 lands on the base point, kept first

    def test_parameter_values_are_evenly_spaced(self):
        # -0.2..0.2 in 5 steps means shifts of t*28 pixels for
        # t in {-0.2, -0.1, 0, 0.1, 0.2}
        x0 = square(28, seed=3)
        pts = generate_perturbations(x0, AffineGrid(-0.2, 0.2, 5))
        expected = {t: translate_image(x0.image(), t * 28, t * 28)
                    for t in (-0.2, -0.1, 0.1, 0.2)}
        keys = {p.key() for p in pts}
        for img in expected.values():
            assert img.astype(np.float32).tobytes() in keys

    def test_zero_range_is_just_the_base_point(self):
        x0 = square(4)
        assert generate_perturbations(x0, AffineGrid(0.0, 0.0, 3)) == [x0]

    def test_t_zero_is_bitwise_identity(self):
        x0 = square(9, seed=5)
        pts = generate_perturbations(x0, AffineGrid(-1.0, 1.0, 3))
        assert any(p.key() == x0.key() for p in pts)
        assert pts[0].key() == x0.key()

    def test_full_width_shift_of_padded_image_is_zero(self):
        img = np.zeros((4, 4), dtype=np.float32)
        img[1:3, 1:3] = 1.0
        # shifting by a full width pushes everything into the zero padding
        shifted = translate_image(img, 4.0, 4.0)
        assert np.array_equal(shifted, np.zeros((4, 4), dtype=np.float32))

    def test_bilinear_matches_scalar_reference(self):
        rng = np.random.default_rng(7)
        img = rng.random((3, 3)).astype(np.float32)
        for dx, dy in [(0.5, 0.0), (-0.3, 0.7), (1.2, -0.4), (2.0, 2.0)]:
            got = translate_image(img, dx, dy)
            want = scalar_translate(img, dx, dy)
            assert np.allclose(got, want, atol=1e-5)

    def test_hand_computed_half_pixel_shift(self):
        img = np.array([[0.0, 1.0, 0.0],
                        [0.0, 0.0, 0.0],
                        [0.0, 0.0, 0.0]], dtype=np.float32)
        got = translate_image(img, 0.5, 0.0)
        # the single bright pixel smears evenly over x=1 and x=2
        assert got[0, 1] == pytest.approx(0.5)
        assert got[0, 2] == pytest.approx(0.5)
        assert got[0, 0] == pytest.approx(0.0)

    def test_nearest_keeps_original_values(self):
        img = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=np.float32)
        got = translate_image(img, 1.0, 0.0, interp="nearest")
        assert np.array_equal(got, np.array([[0.0, 1.0], [0.0, 3.0]],
                                            dtype=np.float32))

    def test_single_axis_translation(self):
        x0 = square(4, seed=9)
        pts = generate_perturbations(x0, AffineGrid(0.25, 0.25, 1, axis="x"))
        want = translate_image(x0.image(), 0.25 * 4, 0.0)
        assert pts[1].key() == want.reshape(-1).tobytes()

    def test_requires_shape_metadata(self):
        p = InputPoint(np.zeros(5, dtype=np.float32))
        with pytest.raises(ShapeMissing):
            generate_perturbations(p, AffineGrid(-0.2, 0.2, 5))

    def test_invalid_parameters(self):
        with pytest.raises(InvalidSpec):
            AffineGrid(0.2, -0.2, 5)
        with pytest.raises(InvalidSpec):
            AffineGrid(-0.2, 0.2, 0)
        with pytest.raises(InvalidSpec):
            AffineGrid(-0.2, 0.2, 5, axis="z")
        with pytest.raises(InvalidSpec):
            AffineGrid(-0.2, 0.2, 5, interp="cubic")


class TestEpsilonGrid:
    def test_offsets_cover_both_ends(self):
        x0 = InputPoint(np.array([0.5, 0.5], dtype=np.float32))
        pts = generate_perturbations(x0, EpsilonGrid(0.1, steps=2))
        feats = {p.key() for p in pts}
        assert np.array([0.4, 0.5], dtype=np.float32).tobytes() in feats
        assert np.array([0.6, 0.5], dtype=np.float32).tobytes() in feats
        assert np.array([0.5, 0.4], dtype=np.float32).tobytes() in feats
        assert np.array([0.5, 0.6], dtype=np.float32).tobytes() in feats

    def test_base_point_comes_first(self):
        x0 = InputPoint(np.array([1.0], dtype=np.float32))
        pts = generate_perturbations(x0, EpsilonGrid(0.5, steps=3))
        assert pts[0] is x0

    def test_axes_subset(self):
        x0 = InputPoint(np.array([0.0, 0.0, 0.0], dtype=np.float32))
        pts = generate_perturbations(x0, EpsilonGrid(1.0, steps=2, axes=(2,)))
        for p in pts:
            assert p.features[0] == 0.0 and p.features[1] == 0.0

    def test_axis_out_of_range(self):
        x0 = InputPoint(np.array([0.0], dtype=np.float32))
        with pytest.raises(InvalidSpec):
            generate_perturbations(x0, EpsilonGrid(1.0, steps=2, axes=(4,)))

    def test_invalid_parameters(self):
        with pytest.raises(InvalidSpec):
            EpsilonGrid(-0.1)
        with pytest.raises(InvalidSpec):
            EpsilonGrid(0.1, metric="l7")
        with pytest.raises(InvalidSpec):
            EpsilonGrid(0.1, steps=0)


class TestExplicitAndComposite:
    def test_explicit_points_pass_through(self):
        x0 = InputPoint(np.array([0.0], dtype=np.float32))
        extra = InputPoint(np.array([1.0], dtype=np.float32))
        pts = generate_perturbations(x0, Explicit((extra,)))
        assert pts == [x0, extra]

    def test_explicit_dimension_mismatch(self):
        x0 = InputPoint(np.array([0.0], dtype=np.float32))
        wrong = InputPoint(np.array([1.0, 2.0], dtype=np.float32))
        with pytest.raises(InvalidSpec):
            generate_perturbations(x0, Explicit((wrong,)))

    def test_composite_is_deduplicated_union(self):
        x0 = InputPoint(np.array([0.0], dtype=np.float32))
        spec = Composite((EpsilonGrid(0.5, steps=2), EpsilonGrid(0.5, steps=2)))
        once = generate_perturbations(x0, EpsilonGrid(0.5, steps=2))
        assert ([p.key() for p in generate_perturbations(x0, spec)]
                == [p.key() for p in once])

    def test_composite_extends_its_parts(self):
        x0 = InputPoint(np.array([0.0], dtype=np.float32))
        a = EpsilonGrid(0.5, steps=2)
        b = EpsilonGrid(0.25, steps=2)
        both = {p.key()
                for p in generate_perturbations(x0, Composite((a, b)))}
        assert {p.key() for p in generate_perturbations(x0, a)} <= both
        assert {p.key() for p in generate_perturbations(x0, b)} <= both

    def test_empty_composite_rejected(self):
        with pytest.raises(InvalidSpec):
            Composite(())


def test_generation_is_deterministic():
    x0 = square(6, seed=11)
    spec = Composite((AffineGrid(-0.2, 0.2, 5), EpsilonGrid(0.1, steps=2)))
    first = [p.key() for p in generate_perturbations(x0, spec)]
    second = [p.key() for p in generate_perturbations(x0, spec)]
    assert first == second
