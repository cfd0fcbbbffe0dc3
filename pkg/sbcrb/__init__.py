# Copyright 2026 The sbcrb Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Semi-blind channel-estimation Cramer-Rao bounds.

sbcrb computes the constrained Cramer-Rao bound on the channel of a
redundant block transmission system (CP-OFDM, zero padding or any tall
full-column-rank precoder) when some source symbols are known pilots and
the rest are unknown. It provides:

    * Building blocks for the block model: convolution matrices,
      precoders, pilot constraints and the orthonormal bases that encode
      them.

    * The channel CRB in three equivalent forms (block extraction from
      the full constrained bound, a Schur complement, and a projector
      form) plus the closed-form trace bound.

    * Numerical oracles for the analytic pieces: finite-difference
      Wirtinger scores, a Monte-Carlo Fisher information and a
      regularity check.

    * A least-squares attainability experiment for the all-pilot case,
      with reproducible seeded Monte-Carlo runs that give the same answer
      for any number of worker processes.

    * A configuration-driven command line (compute, sweep, simulate,
      verify) that writes JSON and CSV reports.

    * An abstraction of operating system functionality called the Host
      class, with an in-memory FakeHost for tests.
"""

from sbcrb.arg_parser import ArgumentParser
from sbcrb.config import RunConfig, ScenarioBuilder, load_config
from sbcrb.crb import (CrbReport, FimReport, Theta, crb_channel_projector,
                       crb_channel_schur, crb_constrained, crb_theta,
                       crb_unconstrained, fim, score, trace_bound)
from sbcrb.errors import (ConfigError, DegenerateConstraints, DuplicateIndex,
                          IndexOutOfRange, InfeasiblePilots, InvalidDims,
                          NonIdentifiable, NonInvertible, SbcrbError,
                          ShapeMismatch)
from sbcrb.fakes.host_fake import FakeHost
from sbcrb.host import Host
from sbcrb.oracle import Check, fd_score, mc_fim, run_verification
from sbcrb.results import ExitCode
from sbcrb.runner import Runner, main
from sbcrb.simulate import run_attainability_experiment
from sbcrb.system_model import (ConstraintBases, PilotSpec, Precoder,
                                PrecoderKind, Scenario, SystemDims,
                                build_constraint_bases, build_precoder,
                                pilot_spec_from_indices)
from sbcrb.test_case import MainTestCase, TestCase
from sbcrb.version import VERSION


__all__ = [
    'ArgumentParser',
    'Check',
    'ConfigError',
    'ConstraintBases',
    'CrbReport',
    'DegenerateConstraints',
    'DuplicateIndex',
    'ExitCode',
    'FakeHost',
    'FimReport',
    'Host',
    'IndexOutOfRange',
    'InfeasiblePilots',
    'InvalidDims',
    'MainTestCase',
    'NonIdentifiable',
    'NonInvertible',
    'PilotSpec',
    'Precoder',
    'PrecoderKind',
    'RunConfig',
    'Runner',
    'SbcrbError',
    'Scenario',
    'ScenarioBuilder',
    'ShapeMismatch',
    'SystemDims',
    'TestCase',
    'Theta',
    'VERSION',
    'build_constraint_bases',
    'build_precoder',
    'crb_channel_projector',
    'crb_channel_schur',
    'crb_constrained',
    'crb_theta',
    'crb_unconstrained',
    'fd_score',
    'fim',
    'load_config',
    'main',
    'mc_fim',
    'pilot_spec_from_indices',
    'run_attainability_experiment',
    'run_verification',
    'score',
    'trace_bound',
]
