from fractions import Fraction

import pytest

from snark_toolkit.exceptions import HypothesisError, SearchExhaustedError
from snark_toolkit.flows.circular import verify_flow
from snark_toolkit.flows.templates import (
    SuperedgeTemplate,
    TemplateSet,
    construct_14_3_flow,
    derive_superedge_templates,
    minimal_template_bound,
)
from snark_toolkit.multipole.builders import petersen, theta
from snark_toolkit.superposition.construction import (
    SuperpositionPlan,
    basic_plan,
    basic_superedge,
    heavy_superposition,
)


def test_minimal_template_bound():
    assert minimal_template_bound(3) == 11
    assert minimal_template_bound(2) == 8
    assert minimal_template_bound(1) == 4
    assert Fraction(minimal_template_bound(3) + 3, 3) == Fraction(14, 3)


def test_template_boundary():
    template = SuperedgeTemplate(colour=1, c=4, values=(4, -4, 3))
    assert template.boundary == (4, -4, 4, -4)
    assert template.to_dict()["max_abs"] == 4


def test_search_below_bound_is_exhausted():
    with pytest.raises(SearchExhaustedError):
        derive_superedge_templates(max_value=10)


def test_uncolourable_base_is_rejected():
    result = heavy_superposition(basic_plan(petersen()), check_heavy=False)
    with pytest.raises(HypothesisError):
        construct_14_3_flow(result)


def test_non_canonical_attachment_is_rejected():
    x = basic_superedge()
    plan = SuperpositionPlan(theta(), (x,) * 3, ("basic",) * 3, ((1, 0, 0, 1),) * 3)
    result = heavy_superposition(plan, check_heavy=False)
    dummy = SuperedgeTemplate(0, 3, (0,) * x.base.num_edges)
    templates = TemplateSet(x, (dummy, dummy, dummy), 11, 3, (3,))
    with pytest.raises(HypothesisError):
        construct_14_3_flow(result, templates=templates)



def test_templates_above_the_14_3_bound_are_rejected():
    x = basic_superedge()
    result = heavy_superposition(basic_plan(theta()), check_heavy=False)
    dummy = SuperedgeTemplate(0, 3, (0,) * x.base.num_edges)
    templates = TemplateSet(x, (dummy, dummy, dummy), 12, 3, (3,))
    with pytest.raises(HypothesisError) as excinfo:
        construct_14_3_flow(result, templates=templates)
    assert excinfo.value.to_dict()["details"]["max_value"] == 12

@pytest.mark.slow
def test_templates_and_14_3_flow_on_theta():
    templates = derive_superedge_templates()
    assert templates.max_value == 11
    assert sum(t.c for t in templates.templates) == 0
    for template in templates.templates:
        assert all(3 <= abs(v) <= 11 for v in template.values)

    result = heavy_superposition(basic_plan(theta()))
    flow = construct_14_3_flow(result, templates=templates)
    assert (flow.p, flow.q) == (14, 3)
    assert verify_flow(result.graph, flow, 14, 3)
    assert all(1 <= abs(v) <= Fraction(11, 3) for v in flow.values)
