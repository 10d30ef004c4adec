// Copyright 2026 The bigmarket Authors
//
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

#include "bigmarket/types.h"

#include <cmath>
#include <functional>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace bigmarket {

std::string FormatBundle(std::span<const int> x) {
  return absl::StrCat("(", absl::StrJoin(x, ","), ")");
}

std::string FormatPrices(std::span<const double> p) {
  return absl::StrCat(
      "(",
      absl::StrJoin(p, ",",
                    [](std::string* out, double v) {
                      if (std::isinf(v)) {
                        absl::StrAppend(out, "inf");
                      } else {
                        absl::StrAppend(out, v);
                      }
                    }),
      ")");
}

std::vector<Bundle> EnumerateBundles(int num_goods, int max_items,
                                     std::span<const int> limit) {
  std::vector<Bundle> out;
  Bundle current(num_goods, 0);
  std::function<void(int, int)> rec = [&](int j, int remaining) {
    if (j == num_goods) {
      out.push_back(current);
      return;
    }
    int top = remaining;
    if (!limit.empty() && limit[j] < top) top = limit[j];
    for (int c = 0; c <= top; ++c) {
      current[j] = c;
      rec(j + 1, remaining - c);
    }
    current[j] = 0;
  };
  rec(0, max_items);
  return out;
}

}  // namespace bigmarket
