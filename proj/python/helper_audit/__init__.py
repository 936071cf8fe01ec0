# Copyright 2026 The helper-audit Authors
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

"""Python bindings for the helper-audit analyzer."""

import json

from ._helper_audit import (  # noqa: F401
    Error,
    default_seeds,
    fixtures,
    generate,
    run_cli,
    validate,
)
from ._helper_audit import analyze as _analyze

__all__ = ["Error", "analyze", "default_seeds", "fixtures", "generate", "run_cli", "validate"]


def analyze(corpus, seeds=None, permissions=None, restrictions=None, **options):
    """Analyze corpus JSON text and return the report as a dict."""
    return json.loads(_analyze(corpus, seeds, permissions, restrictions, **options))
