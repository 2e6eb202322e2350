// Copyright 2026 The qcomm Authors.
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


// Draws a 3-qubit DFS instance, prints the exact Fourier-sampling law, then
// compares it with 20000 simulated measurement shots.

#include <cstdio>

#include "qcomm/core/rng.hpp"
#include "qcomm/quantum/dfs.hpp"
#include "qcomm/quantum/instance_io.hpp"

int main() {
    auto rng = qcomm::make_rng(2024, 0);
    const auto inst = qcomm::random_dfs_instance(3, rng);
    const auto exact = qcomm::dfs_distribution(inst);
    const auto sim = qcomm::dfs_quantum_simulate(inst, rng, 20000);
    std::printf("instance %s\n", qcomm::instance_to_json(inst).dump().c_str());
    std::printf("%4s %10s %10s\n", "s", "exact", "shots");
    for (std::size_t s = 0; s < exact.size(); ++s) {
        std::printf("%4zu %10.6f %10.6f\n", s, exact[s], sim.empirical[s]);
    }
    std::printf("l1(exact, shots) = %.4f\n",
                qcomm::l1_distance(exact, sim.empirical));
    return 0;
}
