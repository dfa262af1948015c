// Copyright 2026 The cmlkg Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cmlkg/cml/formula.hpp"

namespace cmlkg::cml {

FormulaId canonical_formula(FormulaArena& a, Canonical kind) {
  switch (kind) {
    case Canonical::kC: {
      const FormulaId z1 = a.diamond(1, "R1", a.constant("h"));
      const FormulaId z2 = a.diamond(1, "R2", z1);
      return a.diamond(1, "R3", z2);
    }
    case Canonical::kI: {
      const FormulaId z1 = a.diamond(1, "R1", a.constant("h"));
      const FormulaId z2 = a.diamond(1, "R2", z1);
      const FormulaId fan_in = a.diamond(2, "R4", a.top());
      return a.diamond(1, "R3", a.conjoin(fan_in, z2));
    }
    case Canonical::kUprime:
    case Canonical::kUquery: {
      FormulaId fork = a.diamond(1, "R1", a.constant("h"));
      if (kind == Canonical::kUprime) fork = a.conjoin(fork, a.constant("c"));
      const FormulaId left = a.diamond(1, "R4", a.diamond(1, "R2", fork));
      const FormulaId right = a.diamond(1, "R5", a.diamond(1, "R3", fork));
      return a.conjoin(left, right);
    }
  }
  return kNoFormula;
}

}  // namespace cmlkg::cml
