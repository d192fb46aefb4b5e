import pytest
from hypothesis import strategies as st

from delob import ModelParams

#: Parameter strategies matching the randomized-sample ranges used by the
#: verification harness.
alphas = st.floats(0.1, 10.0, allow_nan=False, allow_infinity=False)
betas = st.floats(0.0, 5.0, allow_nan=False, allow_infinity=False)
lambdas = st.floats(0.0, 1.0, allow_nan=False, allow_infinity=False)
bounds = st.floats(0.5, 4.0, allow_nan=False, allow_infinity=False)
ideals = st.floats(0.01, 2.0, allow_nan=False, allow_infinity=False)


@st.composite
def model_params(draw):
    return ModelParams(
        alpha=draw(alphas),
        beta=draw(betas),
        lambda_weight=draw(lambdas),
        shock_bound=draw(bounds),
        congress_ideal=draw(ideals),
        agency_ideal=draw(ideals),
    )


@pytest.fixture
def base_params():
    """The worked benchmark point: x_tilde = 0.5 and the ally point at 1.0."""
    return ModelParams(
        alpha=1.0,
        beta=1.0,
        lambda_weight=1.0,
        shock_bound=1.0,
        congress_ideal=0.5,
        agency_ideal=1.0,
    )
