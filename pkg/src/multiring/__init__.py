"""Finite multirings, real semigroups and abstract real spectra.

Axiom checking, the standard constructions over Q2, translations between
the three presentations and isometry of diagonal forms, all decided by
exhaustive computation on finite carriers.
"""

from .axioms import (
    AxiomProfile,
    check,
    check_ars,
    check_multifield,
    check_multiring,
    check_prs,
    check_qt,
    check_real_reduced,
    check_rs,
    check_ts,
)
from .bridges import (
    ars_to_mr,
    duality_check,
    mr_to_ars,
    mr_to_prs,
    prs_to_mr,
    roundtrip_report,
    translate,
)
from .constructions import (
    build_q2,
    g_T,
    marshall_quotient,
    power,
    preorder_closure,
    product_power,
    q_red,
    q_T,
    ring_mod,
    sper,
    z_sign_quotient,
)
from .core import (
    ARSData,
    ConstructionError,
    FiniteMultiring,
    RealSemigroupData,
    RejectedInput,
    Report,
    ReportEntry,
    StructMorphism,
    UsageError,
    enumerate_morphisms,
    is_isomorphism,
    is_morphism,
    is_strong_embedding,
    plus_set,
    rep_D,
    rep_Dt,
    rs_rep_Dt,
)
from .fileio import ParseError, load_structure, parse_structure, serialize_structure
from .forms import (
    IsoWitness,
    QForm,
    form_disc,
    form_permute,
    form_scale,
    form_sum,
    form_tensor,
    iso_decide,
    iso_oracle,
    parse_form,
)

__version__ = "0.1.0"
