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

#ifndef BIGMARKET_SEED_H_
#define BIGMARKET_SEED_H_

#include <cstdint>

namespace bigmarket {

// SplitMix64 finalizer.
inline uint64_t MixBits(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based seed splitter: the seed of task `index` in `stream` depends
// only on (base, stream, index), so tasks may run in any order or in
// parallel and still see the same randomness.
inline uint64_t DeriveSeed(uint64_t base, uint64_t stream, uint64_t index = 0) {
  return MixBits(MixBits(MixBits(base) ^ stream) ^ (index * 0xd1b54a32d192ed03ULL));
}

}  // namespace bigmarket

#endif  // BIGMARKET_SEED_H_
