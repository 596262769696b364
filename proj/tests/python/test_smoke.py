# Copyright 2026 The edgeorch Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
import json
import os
import pathlib

import pytest

import edgeorch

SCENARIOS = pathlib.Path(
    os.environ.get("EDGEORCH_SCENARIO_DIR", pathlib.Path(__file__).resolve().parents[2] / "scenarios")
)


def scenario(name):
    return str(SCENARIOS / f"{name}.json")


def test_validate_fixture():
    assert edgeorch.validate(scenario("roaming")) == "roaming"


def test_validate_errors_carry_code():
    with pytest.raises(edgeorch.EdgeorchError) as err:
        edgeorch.validate("{")
    assert err.value.code == "ParseError"


def test_roaming_run():
    result = edgeorch.run(scenario("roaming"))
    lines = result.trace_jsonl.splitlines()
    assert json.loads(lines[0])["kind"] == "run_start"
    assert json.loads(lines[-1])["kind"] == "run_end"
    assert result.records == len(lines)
    assert result.report.summary["roams"] == 1
    assert result.report.migrations[0]["downtime_ms"] == 82
    assert result.report.loss["dropped_bits"] == 0


def test_report_is_pure():
    result = edgeorch.run(scenario("scaling"))
    again = edgeorch.report_from_jsonl(result.trace_jsonl)
    assert again == result.report
    assert again.metrics_csv() == result.report.metrics_csv()


def test_determinism_and_until():
    a = edgeorch.run(scenario("steady"))
    b = edgeorch.run(scenario("steady"))
    assert a.trace_hash == b.trace_hash
    short = edgeorch.run(scenario("steady"), until=5000)
    assert short.report.end_ms == 5000


def test_malformed_trace():
    with pytest.raises(edgeorch.EdgeorchError) as err:
        edgeorch.report_from_jsonl("{}\n")
    assert err.value.code == "MalformedTrace"


def test_transfer_duration():
    assert edgeorch.transfer_duration(100, [(2, 100)]) == 8002.0
