"""Integration tests for the pipeline API."""

import pytest

HARMONIC = "1/2*mu*omega^2*q^2"


class TestHealth:
    """Tests for the health and root endpoints."""

    def test_health(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        data = response.json()
        assert data["status"] == "healthy"
        assert data["components"]["pipeline"]["kernel_misses"] == 0

    def test_root(self, client):
        data = client.get("/").json()
        assert data["name"] == "Time-of-Arrival Correspondence API"
        assert data["health"] == "/health"


class TestLocalEndpoint:
    """Tests for POST /v1/local."""

    def test_linear_negated(self, client):
        response = client.post(
            "/v1/local", json={"potential": "lambda*q", "order": 2, "negate": True}
        )
        assert response.status_code == 200
        data = response.json()
        assert data["negated"] is True
        assert data["x"] == "0/1"
        assert [term["coeff"] for term in data["per_order"][1]] == ["-1/2"]
        assert {"coeff": "1/1", "mu": 1, "hbar": 0, "sym": {}, "q": 1, "x": 0, "pinv": 1} in (
            data["series"]
        )

    def test_symbolic_arrival_point(self, client):
        data = client.post(
            "/v1/local", json={"potential": "lambda*q", "order": 1, "x": "x"}
        ).json()
        assert data["x"] == "x"
        assert any(term["x"] == 2 for term in data["series"])

    def test_constant_term_rejected(self, client):
        response = client.post("/v1/local", json={"potential": "q^0"})
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "POTENTIAL_PARSE_ERROR"

    def test_bad_arrival_point(self, client):
        response = client.post("/v1/local", json={"potential": "lambda*q", "x": "one"})
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "INVALID_INPUT"

    def test_error_envelope_carries_exit_code(self, client):
        """The body reports the family and the exit status the CLI would return."""
        error = client.post("/v1/local", json={"potential": "q^0"}).json()["error"]
        assert error["family"] == "input"
        assert error["exit_code"] == 2
        assert error["details"]["potential"] == "q^0"

    def test_parameter_named_like_a_keyword(self, client):
        """Any identifier outside the reserved set is a parameter name."""
        response = client.post("/v1/local", json={"potential": "cls*q^2", "order": 1})
        assert response.status_code == 200


class TestKernelEndpoint:
    """Tests for POST /v1/kernel."""

    def test_harmonic(self, client):
        response = client.post(
            "/v1/kernel", json={"potential": HARMONIC, "order": 6, "include_qq": True}
        )
        assert response.status_code == 200
        data = response.json()
        assert data["boundary"] == {"row": True, "column": True, "composite": True, "ok": True}
        assert data["residual"] == []
        assert [term["coeff"] for term in data["series"]] == ["1/4", "1/96", "1/7680", "1/1290240"]
        assert data["qq"]

    def test_odd_order(self, client):
        response = client.post("/v1/kernel", json={"potential": "lambda*q", "order": 3})
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "INVALID_ORDER"

    def test_order_above_maximum(self, client):
        response = client.post("/v1/kernel", json={"potential": "lambda*q", "order": 1000})
        assert response.status_code == 400

    def test_negative_order_is_a_validation_error(self, client):
        response = client.post("/v1/kernel", json={"potential": "lambda*q", "order": -2})
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "VALIDATION_ERROR"
        assert response.json()["error"]["details"]["errors"][0]["field"] == "body.order"

    def test_cache_is_used(self, client):
        payload = {"potential": "lambda*q^4", "order": 4}
        client.post("/v1/kernel", json=payload)
        client.post("/v1/kernel", json=payload)
        pipeline = client.get("/health").json()["components"]["pipeline"]
        assert pipeline["kernel_hits"] >= 1


class TestTransformEndpoints:
    """Tests for POST /v1/transform and /v1/weyl."""

    def test_quartic_transform(self, client):
        data = client.post("/v1/transform", json={"potential": "lambda*q^4", "order": 4}).json()
        assert data["correction_orders"] == [2]
        hbar_terms = [term for term in data["t_hbar"] if term["hbar"] == 2]
        assert hbar_terms == [
            {"coeff": "-2/1", "mu": 2, "hbar": 2, "sym": {"lambda": 1}, "q": 3, "x": 0, "pinv": 5}
        ]
        assert all(term["hbar"] == 0 for term in data["classical_limit"])

    def test_weyl(self, client):
        data = client.post("/v1/weyl", json={"potential": "lambda*q^4", "order": 3}).json()
        assert data["inverse_matches"] is True
        assert data["weyl_kernel"][0]["coeff"] == "1/4"


class TestCompareEndpoint:
    """Tests for POST /v1/compare."""

    def test_harmonic_exact(self, client):
        data = client.post("/v1/compare", json={"potential": HARMONIC, "order": 8}).json()
        assert data["system_class"] == "exact"
        assert data["consistent"] is True
        assert data["delta_terms"] == []

    def test_quartic_corrected_with_ambiguity(self, client):
        data = client.post(
            "/v1/compare", json={"potential": "lambda*q^4", "order": 8, "ambiguity": "1"}
        ).json()
        assert data["system_class"] == "hbar_corrected"
        assert data["consistent"] is True
        assert data["ambiguity"] == [
            {"coeff": "-2/1", "mu": 1, "hbar": 1, "sym": {}, "q": 0, "x": 0, "pinv": 2}
        ]

    def test_bad_ambiguity(self, client):
        response = client.post(
            "/v1/compare", json={"potential": "lambda*q", "ambiguity": "half"}
        )
        assert response.status_code == 400


class TestNumericEndpoint:
    """Tests for POST /v1/numeric."""

    def test_harmonic(self, client):
        data = client.post(
            "/v1/numeric",
            json={"potential": HARMONIC, "q": -1.0, "p": 2.0, "order": 20},
        ).json()
        assert data["in_region"] is True
        assert data["abs_error"] < 1e-9
        assert data["quadrature_value"] == pytest.approx(0.463648, abs=1e-6)

    def test_unreachable_is_flagged(self, client):
        data = client.post(
            "/v1/numeric",
            json={"potential": "lambda*q^4", "q": -1.0, "p": 0.1, "x": 2.0, "order": 3},
        ).json()
        assert data["reachable"] is False
        assert data["quadrature_value"] is None

    def test_zero_momentum(self, client):
        response = client.post(
            "/v1/numeric", json={"potential": "lambda*q", "q": 1.0, "p": 0.0}
        )
        assert response.status_code == 422
        assert response.json()["error"]["code"] == "SINGULAR_EVALUATION"


class TestTablesEndpoint:
    """Tests for GET /v1/tables/{which}."""

    def test_table_one(self, client):
        data = client.get("/v1/tables/1", params={"order": 2}).json()
        assert data["which"] == 1
        assert "| λq | 1 |" in data["markdown"]

    def test_unknown_table(self, client):
        response = client.get("/v1/tables/3")
        assert response.status_code == 400

    def test_order_above_maximum(self, client):
        """Tables honour the same order limit as the pipelines."""
        response = client.get("/v1/tables/2", params={"order": 66})
        assert response.status_code == 400
        assert response.json()["error"]["code"] == "INVALID_ORDER"
