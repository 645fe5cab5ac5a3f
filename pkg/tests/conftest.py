import pytest

import sliceorch as so


@pytest.fixture(scope="session")
def exp1():
    return so.load_bundled("exp1")


@pytest.fixture(scope="session")
def exp2():
    return so.load_bundled("exp2")


@pytest.fixture(scope="session")
def curves(exp1):
    return so.build_curves(exp1.nf_profiles)


@pytest.fixture(scope="session")
def ram_demand(exp1):
    return {nf: exp1.nf_profiles[nf].ram_demand_gb for nf in ("CU-UP", "UPF")}


@pytest.fixture(scope="session")
def exp1_result(exp1):
    return so.run_scenario(exp1)


@pytest.fixture(scope="session")
def exp2_result(exp2):
    return so.run_scenario(exp2)


@pytest.fixture(scope="session")
def exp2_baseline_result(exp2):
    return so.run_scenario(exp2, assurance_enabled=False)
