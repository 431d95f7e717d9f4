#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bbqec/noise.hpp"

namespace bbqec::purify {

// Residual Pauli error on one half of an ideal Bell pair, in the twirled
// (Pauli-frame) picture. fidelity() is the identity component.
struct BellDiagonalState {
    double p_i = 1.0, p_x = 0.0, p_y = 0.0, p_z = 0.0;

    double fidelity() const { return p_i; }
    double sum() const { return p_i + p_x + p_y + p_z; }
    void normalize();
    static BellDiagonalState perfect() { return {}; }
};

// Pauli-frame Monte Carlo of the constant-depth entanglement-swapping chain
// (length = number of ancilla-layer edges) under the circuit noise model.
BellDiagonalState simulate_bell_chain(int length, const NoiseModel& noise, int shots,
                                      uint64_t seed);

// Single-round two-pair purification: transversal CNOTs from source onto
// donor, donor halves measured in Z, source kept when the outcomes agree.
// Monte Carlo with gate/measurement/idle noise on the purification circuit.
std::pair<double, BellDiagonalState> bennett_purify(const BellDiagonalState& source,
                                                    const BellDiagonalState& donor,
                                                    const NoiseModel& noise, int shots,
                                                    uint64_t seed);

// Closed form of the same protocol with a noiseless purification circuit.
std::pair<double, BellDiagonalState> bennett_recurrence(const BellDiagonalState& source,
                                                        const BellDiagonalState& donor);

// Residual Bell error as a two-qubit depolarizing rate applied after the
// teleported CNOT; a fully mixed half maps to rate 1.
double effective_cnot_error(const BellDiagonalState& state);

struct PurifyEntry {
    int length = 0;
    double success_prob = 1.0;
    BellDiagonalState state;
    double cnot_error = 0.0;
};

struct PurifyTable {
    std::vector<PurifyEntry> entries;  // entries[L-1] is chain length L
    int max_length() const { return int(entries.size()); }
    bool idle_noise_included = true;  // metadata: idle applied inside the sub-simulation
    const PurifyEntry& at(int length) const;

    static PurifyTable noiseless(int max_length);
    std::string to_csv() const;  // length,success_prob,fidelity,cnot_error
    static PurifyTable from_csv(const std::string& text);
};

// Chain + single-donor purification pipeline per length, deterministic for
// a fixed seed.
PurifyTable build_purify_table(int max_length, const NoiseModel& noise, int shots, uint64_t seed);

}  // namespace bbqec::purify
