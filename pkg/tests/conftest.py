import pytest

from renitent import field_create

# (p, e) pairs small enough for exhaustive sweeps over all elements,
# directions, or plane points.
SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]


@pytest.fixture(params=SMALL_FIELDS, ids=lambda pe: f"q{pe[0] ** pe[1]}")
def small_field(request):
    return field_create(*request.param)
