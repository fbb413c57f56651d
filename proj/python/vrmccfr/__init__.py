# Copyright 2026 The vrmccfr Authors
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

"""Variance-reduced Monte Carlo CFR for Kuhn and Leduc poker."""

from vrmccfr._core import (
    CSV_HEADER,
    CfrSolver,
    ContractError,
    Game,
    IoError,
    McSolver,
    NumericError,
    SeriesRecord,
    format_csv,
    kuhn_worked_example,
    make_game,
    read_csv,
    run_experiment,
    write_csv,
)

__all__ = [
    "CSV_HEADER",
    "CfrSolver",
    "ContractError",
    "Game",
    "IoError",
    "McSolver",
    "NumericError",
    "SeriesRecord",
    "format_csv",
    "kuhn_worked_example",
    "make_game",
    "read_csv",
    "run_experiment",
    "write_csv",
]
