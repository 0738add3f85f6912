"""Network text format"""

import numpy as np
import pytest

from src.estimator.fit import FitResult, read_fit_result, write_fit_result
from src.models.network import Architecture, NetworkParams, ScaledNetwork
from src.network.serialization import HEADER, format_network, parse_network, read_network, write_network


class TestNetworkFormat:

    def test_layout(self, example_theta):
        text = format_network(example_theta)
        assert text.splitlines() == [
            HEADER,
            "depth 1",
            "widths 1 1 1",
            "layer 0 1 1",
            "2",
            "layer 1 1 1",
            "3",
        ]

    def test_exact_round_trip(self, rng, tmp_path):
        arch = Architecture((3, 5, 2, 1))
        theta = NetworkParams.random_normal(arch, rng)
        path = write_network(tmp_path / "net.txt", theta, {"kappa": 1.0 / 3.0, "iterations": 12, "note": "x"})
        again, metadata = read_network(path)
        for a, b in zip(theta.layers, again.layers):
            np.testing.assert_array_equal(a, b)
        assert metadata == {"kappa": 1.0 / 3.0, "iterations": 12, "note": "x"}

    def test_without_metadata(self, example_theta):
        _, metadata = parse_network(format_network(example_theta))
        assert metadata == {}

    @pytest.mark.parametrize("text", [
        "depth 1\nwidths 1 1 1\nlayer 0 1 1\n2\n",
        "depth 2\nwidths 1 1 1\nlayer 0 1 1\n2\nlayer 1 1 1\n3\n",
        "depth 1\nwidths 1 1 1\nlayer 0 1 1\n2 5\nlayer 1 1 1\n3\n",
        "depth 1\nwidths 1 1 1\nlayer 0 1 1\n2\nlayer 1 1 1\n3\ntrailing\n",
        "widths 1 1 1\n",
    ])
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            parse_network(text)


class TestFitResultFile:

    def test_round_trip(self, rng, tmp_path):
        arch = Architecture((2, 3, 1))
        omega = NetworkParams.random_normal(arch, rng).scaled(0.1)
        result = FitResult(
            net=ScaledNetwork(1.75, omega),
            objective=0.25,
            trace=(0.5, 0.25),
            restart_index=1,
            lam=0.125,
            iterations=1,
        )
        path = write_fit_result(tmp_path / "fit.txt", result)
        net, metadata = read_fit_result(path)
        assert net.kappa == 1.75
        assert net.omega.allclose(omega, rtol=0.0)
        assert metadata["lambda"] == 0.125
        assert metadata["restart_index"] == 1

    def test_missing_kappa(self, example_theta, tmp_path):
        path = write_network(tmp_path / "plain.txt", example_theta)
        with pytest.raises(ValueError):
            read_fit_result(path)
