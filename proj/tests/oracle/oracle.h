// Copyright 2026 The urate Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef URATE_TESTS_ORACLE_ORACLE_H_
#define URATE_TESTS_ORACLE_ORACLE_H_

// Slow, direct reference implementations used to derive expected values in
// tests. Nothing here calls into the library.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace urate::oracle {

using Row = std::vector<int>;
using Table = std::vector<Row>;  // [hypothesis][point]

// Class members restated from their textbook definitions.
int Example5Star1(std::uint64_t x);
int Example5Star2(std::uint64_t x);
int Example5H(std::uint64_t i, std::uint64_t x);
int Threshold(std::uint64_t t, std::uint64_t x);

bool Shatters(const Table& table, const std::vector<std::size_t>& cols);
// Largest shattered column subset, by trying every subset.
int VcDimension(const Table& table);
// Longest eluder sequence centered at `center`, by trying every ordering.
std::size_t MaxEluderLength(const Table& table, const Row& center);

enum class Policy { kFirst, kUniform, kWorst };

// Expected excess of ERM over n i.i.d. draws, enumerating every ordered
// sample. labels[h][j] is h's label at support point j; excess[h] its true
// excess risk.
double ExactExpectedExcess(const std::vector<double>& mass,
                           const std::vector<double>& eta, const Table& labels,
                           const std::vector<double>& excess, int n,
                           Policy policy);

// True error of each row of labels under (mass, eta).
std::vector<double> TrueErrors(const std::vector<double>& mass,
                               const std::vector<double>& eta,
                               const Table& labels);

// P(Binomial(n, p) >= k), summed term by term in long double.
double BinomialUpperTail(int n, double p, int k);

// Least integer n > prev with r(n) <= target, by doubling then bisection
// in long double.
long double LeastAtMost(const std::function<long double(long double)>& r,
                        long double target, long double prev);

}  // namespace urate::oracle

#endif  // URATE_TESTS_ORACLE_ORACLE_H_
