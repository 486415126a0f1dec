// Copyright 2026 The uext Authors
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

// Times Schur complement assembly: OpenMP kernel, the same kernel serially,
// and the dense serial reference, on embedded E_max programs of growing size.
//
//   bench_schur [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <random>

#include "uext/conic/builders.hpp"
#include "uext/conic/schur.hpp"

using namespace uext;
using namespace uext::conic;

namespace {

template <class F>
double best_ms(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
  std::printf("threads=%d\n", max_threads());
  std::printf("%-8s %6s %6s %12s %12s %12s %10s\n", "dims", "m", "block", "omp_ms", "serial_ms", "ref_ms",
              "max_diff");
  struct Case {
    int da, db, rank;
  };
  for (Case c : {Case{2, 2, 4}, Case{2, 3, 6}, Case{3, 3, 9}, Case{4, 4, 6}}) {
    auto ext = std::make_shared<const ExtensionProgram>(states::random_bipartite(c.da, c.db, c.rank, 17));
    auto real = embed(build_emax(ext).problem);
    std::vector<const SparseHermitian<double>*> fs;
    for (const auto& f : real.f) fs.push_back(&f);
    SchurOperands<double> ops(real.block_dims, fs);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    BlockMatrix<double> q;
    int largest = 0;
    for (int d : real.block_dims) {
      Eigen::MatrixXd m(d, d);
      for (auto& x : m.reshaped()) x = g(rng);
      q.push_back(m * m.transpose() / d);
      largest = std::max(largest, d);
    }
    Eigen::MatrixXd h_omp, h_ser, h_ref;
    double t_omp = best_ms(repeats, [&] { assemble_schur(ops, q, h_omp, true); });
    double t_ser = best_ms(repeats, [&] { assemble_schur(ops, q, h_ser, false); });
    double t_ref = best_ms(repeats, [&] { assemble_schur_reference(ops, q, h_ref); });
    double diff = (h_omp - h_ref).cwiseAbs().maxCoeff();
    char dims[16];
    std::snprintf(dims, sizeof dims, "%dx%d r%d", c.da, c.db, c.rank);
    std::printf("%-8s %6d %6d %12.2f %12.2f %12.2f %10.1e\n", dims, ops.size(), largest, t_omp, t_ser, t_ref,
                diff);
  }
}
