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

"""Exceptions raised by sbcrb.

Library code raises these; only the runner turns them into exit codes.
"""


class SbcrbError(Exception):
    pass


class ShapeMismatch(SbcrbError, ValueError):
    pass


class InvalidDims(SbcrbError, ValueError):
    pass


class DuplicateIndex(SbcrbError, ValueError):
    pass


class IndexOutOfRange(SbcrbError, ValueError):
    pass


class DegenerateConstraints(SbcrbError):
    pass


class InfeasiblePilots(SbcrbError):
    pass


class ConfigError(SbcrbError):
    pass


class NonInvertible(SbcrbError):

    def __init__(self, name, condition):
        super(NonInvertible, self).__init__(
            '%s is numerically singular (condition number %.3g)' %
            (name, condition))
        self.name = name
        self.condition = condition


class NonIdentifiable(NonInvertible):
    """The (constrained) Fisher information is singular.

    In the blind setting this is the scalar ambiguity between the channel
    and the channel input; more (non-zero) pilots resolve it.
    """
