"""Unified four-parameter Bessel functions: series evaluation, transforms,
identity verification and a generalized Kaiser window."""

from .bessel import (Family, FamilyParams, bessel_oracle, dz_series, evaluate,
                     neumann_expansion, reflect_negative_order)
from .catalogue import CatalogueEntry, load_catalogue, serialize_catalogue
from .errors import (DomainError, NotConverged, ParseError, PoleError, QuadratureFailure,
                     UnibesselError)
from .hypergeom import PfqArgs, hyp, pfq, pfq_extended
from .identities import IdentityId, IdentityReport, check_identity, drho_shift
from .quadrature import (QuadratureOpts, QuadratureResult, integrate_semi_infinite,
                         integrate_tensor, integrate_unit)
from .special import extended_gamma, gamma, gen_pochhammer, pochhammer
from .summation import SeriesValue
from .transforms import (IntegralVariant, integral_rep, laplace_series, mellin_product_series,
                         mellin_rho_series, mellin_z_series, product_integral_rep,
                         triple_integral)
from .window import FilterSpec, Window, WindowSpec, fir_lowpass, freq_response, kaiser_general

__version__ = "0.1.0"

__all__ = [
    "Family", "FamilyParams", "bessel_oracle", "dz_series", "evaluate", "neumann_expansion",
    "reflect_negative_order", "CatalogueEntry", "load_catalogue", "serialize_catalogue",
    "DomainError", "NotConverged", "ParseError", "PoleError", "QuadratureFailure",
    "UnibesselError", "PfqArgs", "hyp", "pfq", "pfq_extended", "IdentityId", "IdentityReport",
    "check_identity", "drho_shift", "QuadratureOpts", "QuadratureResult",
    "integrate_semi_infinite", "integrate_tensor", "integrate_unit", "extended_gamma", "gamma",
    "gen_pochhammer", "pochhammer", "SeriesValue", "IntegralVariant", "integral_rep",
    "laplace_series", "mellin_product_series", "mellin_rho_series", "mellin_z_series",
    "product_integral_rep", "triple_integral", "FilterSpec", "Window", "WindowSpec",
    "fir_lowpass", "freq_response", "kaiser_general",
]
