import pytest

from trisect.surface import Surface, SurfaceError, build_surface


def test_torus_classification():
    assert Surface.torus().classify() == (0, 1, 0)


@pytest.mark.parametrize("g", range(0, 6))
def test_closed_genus(g):
    s = Surface.closed_genus(g)
    assert s.classify() == (2 - 2 * g, g, 0)
    assert s.is_closed


def test_square_disk():
    s = Surface([4], [])
    assert s.classify() == (1, 0, 1)
    assert len(s.boundary_circles[0]) == 4


def test_annulus_from_two_squares():
    # two squares glued along two opposite side pairs
    s = Surface([4, 4], [((0, 1), (1, 3)), ((0, 3), (1, 1))])
    assert s.classify() == (0, 0, 2)


def test_sphere_from_bigon():
    s = Surface.from_word(["a", "a-"])
    assert s.classify() == (2, 0, 0)


def test_self_gluing_rejected():
    with pytest.raises(SurfaceError):
        Surface([4], [((0, 0), (0, 0))])


def test_double_gluing_rejected():
    with pytest.raises(SurfaceError):
        Surface([4, 4], [((0, 0), (1, 0)), ((0, 0), (1, 1))])


def test_dangling_reference_rejected():
    with pytest.raises(SurfaceError):
        Surface([4], [((0, 0), (0, 7))])


def test_disconnected_rejected_by_default():
    with pytest.raises(SurfaceError):
        Surface([4, 4], [])
    s = Surface([4, 4], [], require_connected=False)
    assert not s.connected


def test_boundary_labels():
    s = Surface([4], [], labels={"Q": 0})
    assert s.label_of_circle(0) == "Q"
    with pytest.raises(SurfaceError):
        Surface([4], [], labels={"Q": 3})


def test_build_surface_helper():
    s = build_surface([4], [((0, 0), (0, 2)), ((0, 1), (0, 3))])
    assert s == Surface.torus()
