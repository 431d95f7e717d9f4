#include "bbqec/purify.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace bbqec::purify {

namespace {

uint64_t mix_seed(uint64_t seed, uint64_t salt) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

struct Frame {
    std::vector<uint8_t> x, z;
    explicit Frame(int n) : x(n, 0), z(n, 0) {}
};

struct Rng {
    std::mt19937_64 gen;
    std::uniform_real_distribution<double> uni{0.0, 1.0};
    explicit Rng(uint64_t seed) : gen(seed) {}
    bool bern(double p) { return p > 0.0 && uni(gen) < p; }
    int pick(int n) { return int(gen() % uint64_t(n)); }
};

void depolarize1(Frame& f, int q, double rate, Rng& rng) {
    if (!rng.bern(rate)) return;
    switch (rng.pick(3)) {
        case 0: f.x[q] ^= 1; break;
        case 1: f.z[q] ^= 1; break;
        default: f.x[q] ^= 1; f.z[q] ^= 1; break;
    }
}

void depolarize2(Frame& f, int a, int b, double rate, Rng& rng) {
    if (!rng.bern(rate)) return;
    const int outcome = 1 + rng.pick(15);  // 1..15, skip II
    const int pa = outcome & 3, pb = (outcome >> 2) & 3;
    if (pa & 1) f.x[a] ^= 1;
    if (pa & 2) f.z[a] ^= 1;
    if (pb & 1) f.x[b] ^= 1;
    if (pb & 2) f.z[b] ^= 1;
}

void apply_h(Frame& f, int q) { std::swap(f.x[q], f.z[q]); }
void apply_cz(Frame& f, int a, int b) {
    f.z[a] ^= f.x[b];
    f.z[b] ^= f.x[a];
}
void apply_cnot(Frame& f, int c, int t) {
    f.x[t] ^= f.x[c];
    f.z[c] ^= f.z[t];
}

// One noisy run of the swap chain on qubits 0..L; returns the one-sided
// residual Pauli (x, z) of the end-to-end pair.
std::pair<int, int> run_chain(int length, const NoiseModel& noise, Rng& rng) {
    const int nq = length + 1;
    Frame f(nq);

    // layer 1: reset everything
    for (int q = 0; q < nq; q++)
        if (rng.bern(noise.reset_flip())) f.x[q] ^= 1;
    // layer 2: H everywhere
    for (int q = 0; q < nq; q++) {
        apply_h(f, q);
        depolarize1(f, q, noise.single_qubit(), rng);
    }
    // layers 3 and 4: CZ on even then odd edges
    for (int parity = 0; parity < 2; parity++) {
        std::vector<uint8_t> touched(nq, 0);
        for (int e = parity; e < length; e += 2) {
            apply_cz(f, e, e + 1);
            depolarize2(f, e, e + 1, noise.two_qubit(), rng);
            touched[e] = touched[e + 1] = 1;
        }
        for (int q = 0; q < nq; q++)
            if (!touched[q]) depolarize1(f, q, noise.idle(), rng);
    }
    // layer 5: H on interiors, plus the far end when length is odd
    {
        std::vector<uint8_t> touched(nq, 0);
        for (int q = 1; q < length; q++) {
            apply_h(f, q);
            depolarize1(f, q, noise.single_qubit(), rng);
            touched[q] = 1;
        }
        if (length % 2 == 1) {
            apply_h(f, length);
            depolarize1(f, length, noise.single_qubit(), rng);
            touched[length] = 1;
        }
        for (int q = 0; q < nq; q++)
            if (!touched[q]) depolarize1(f, q, noise.idle(), rng);
    }
    // layer 6: measure interiors in Z; outcome flips feed the end Pauli
    // corrections (odd interior -> X on the far end, even -> Z)
    for (int q = 1; q < length; q++) {
        int flip = f.x[q];
        if (rng.bern(noise.measure_flip())) flip ^= 1;
        if (q % 2 == 1)
            f.x[length] ^= flip;
        else
            f.z[length] ^= flip;
    }
    for (int q : {0, length})
        depolarize1(f, q, noise.idle(), rng);

    return {f.x[0] ^ f.x[length], f.z[0] ^ f.z[length]};
}

// Sample a one-sided Pauli from a Bell-diagonal distribution.
std::pair<int, int> sample_state(const BellDiagonalState& s, Rng& rng) {
    const double u = rng.uni(rng.gen);
    if (u < s.p_i) return {0, 0};
    if (u < s.p_i + s.p_x) return {1, 0};
    if (u < s.p_i + s.p_x + s.p_y) return {1, 1};
    return {0, 1};
}

// One noisy purification attempt; source error on s2, donor error on d2.
// Returns (accepted, out_x, out_z).
struct PurifyOutcome {
    bool accepted;
    int x, z;
};
PurifyOutcome run_purify(std::pair<int, int> src, std::pair<int, int> don,
                         const NoiseModel& noise, Rng& rng) {
    // qubits: 0=s1, 1=s2, 2=d1, 3=d2
    Frame f(4);
    f.x[1] = uint8_t(src.first);
    f.z[1] = uint8_t(src.second);
    f.x[3] = uint8_t(don.first);
    f.z[3] = uint8_t(don.second);

    apply_cnot(f, 0, 2);
    depolarize2(f, 0, 2, noise.two_qubit(), rng);
    apply_cnot(f, 1, 3);
    depolarize2(f, 1, 3, noise.two_qubit(), rng);

    int m1 = f.x[2], m2 = f.x[3];
    if (rng.bern(noise.measure_flip())) m1 ^= 1;
    if (rng.bern(noise.measure_flip())) m2 ^= 1;
    depolarize1(f, 0, noise.idle(), rng);
    depolarize1(f, 1, noise.idle(), rng);

    PurifyOutcome out;
    out.accepted = ((m1 ^ m2) == 0);
    out.x = f.x[0] ^ f.x[1];
    out.z = f.z[0] ^ f.z[1];
    return out;
}

BellDiagonalState tally_to_state(const std::array<long long, 4>& counts, long long total) {
    BellDiagonalState s;
    if (total == 0) return s;
    s.p_i = double(counts[0]) / double(total);
    s.p_x = double(counts[1]) / double(total);
    s.p_y = double(counts[2]) / double(total);
    s.p_z = double(counts[3]) / double(total);
    return s;
}

int pauli_index(int x, int z) { return x ? (z ? 2 : 1) : (z ? 3 : 0); }  // I,X,Y,Z

}  // namespace

void BellDiagonalState::normalize() {
    const double s = sum();
    if (s <= 0.0) throw std::invalid_argument("BellDiagonalState: nonpositive mass");
    p_i /= s;
    p_x /= s;
    p_y /= s;
    p_z /= s;
}

BellDiagonalState simulate_bell_chain(int length, const NoiseModel& noise, int shots,
                                      uint64_t seed) {
    if (length < 1 || shots < 1) throw std::invalid_argument("simulate_bell_chain: bad args");
    Rng rng(mix_seed(seed, uint64_t(length)));
    std::array<long long, 4> counts{0, 0, 0, 0};
    for (int s = 0; s < shots; s++) {
        const auto [x, z] = run_chain(length, noise, rng);
        counts[pauli_index(x, z)]++;
    }
    return tally_to_state(counts, shots);
}

std::pair<double, BellDiagonalState> bennett_purify(const BellDiagonalState& source,
                                                    const BellDiagonalState& donor,
                                                    const NoiseModel& noise, int shots,
                                                    uint64_t seed) {
    Rng rng(mix_seed(seed, 0x42));
    std::array<long long, 4> counts{0, 0, 0, 0};
    long long accepted = 0;
    for (int s = 0; s < shots; s++) {
        const auto out =
            run_purify(sample_state(source, rng), sample_state(donor, rng), noise, rng);
        if (!out.accepted) continue;
        accepted++;
        counts[pauli_index(out.x, out.z)]++;
    }
    return {double(accepted) / double(shots), tally_to_state(counts, accepted)};
}

std::pair<double, BellDiagonalState> bennett_recurrence(const BellDiagonalState& source,
                                                        const BellDiagonalState& donor) {
    // one-sided (x, z) per Pauli: I=(0,0) X=(1,0) Y=(1,1) Z=(0,1)
    const std::array<std::pair<int, int>, 4> rep{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    const std::array<double, 4> ps{source.p_i, source.p_x, source.p_y, source.p_z};
    const std::array<double, 4> pd{donor.p_i, donor.p_x, donor.p_y, donor.p_z};
    double success = 0.0;
    std::array<double, 4> out{0, 0, 0, 0};
    for (int a = 0; a < 4; a++) {
        for (int b = 0; b < 4; b++) {
            if (rep[a].first != rep[b].first) continue;  // donor parity disagrees
            const double w = ps[a] * pd[b];
            success += w;
            out[pauli_index(rep[a].first, rep[a].second ^ rep[b].second)] += w;
        }
    }
    BellDiagonalState st;
    if (success > 0.0) {
        st.p_i = out[0] / success;
        st.p_x = out[1] / success;
        st.p_y = out[2] / success;
        st.p_z = out[3] / success;
    }
    return {success, st};
}

double effective_cnot_error(const BellDiagonalState& state) {
    return (16.0 / 15.0) * (1.0 - state.p_i);
}

const PurifyEntry& PurifyTable::at(int length) const {
    if (length < 1 || length > max_length())
        throw std::out_of_range("purify table: missing chain length " + std::to_string(length));
    return entries[length - 1];
}

PurifyTable PurifyTable::noiseless(int max_length) {
    PurifyTable t;
    for (int len = 1; len <= max_length; len++) t.entries.push_back(PurifyEntry{len, 1.0, {}, 0.0});
    return t;
}

std::string PurifyTable::to_csv() const {
    std::ostringstream out;
    out << "length,success_prob,fidelity,cnot_error\n";
    for (const auto& e : entries)
        out << e.length << "," << e.success_prob << "," << e.state.fidelity() << ","
            << e.cnot_error << "\n";
    return out.str();
}

PurifyTable PurifyTable::from_csv(const std::string& text) {
    PurifyTable t;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        PurifyEntry e;
        double fid;
        if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf", &e.length, &e.success_prob, &fid,
                        &e.cnot_error) != 4)
            throw std::invalid_argument("bad purify csv line: " + line);
        // only the fidelity and an even split of the rest are recoverable
        e.state.p_i = fid;
        e.state.p_x = e.state.p_y = e.state.p_z = (1.0 - fid) / 3.0;
        t.entries.push_back(e);
    }
    return t;
}

PurifyTable build_purify_table(int max_length, const NoiseModel& noise, int shots, uint64_t seed) {
    if (max_length < 1) throw std::invalid_argument("build_purify_table: max_length >= 1");
    PurifyTable table;
    for (int len = 1; len <= max_length; len++) {
        Rng rng(mix_seed(seed, uint64_t(len)));
        std::array<long long, 4> counts{0, 0, 0, 0};
        long long accepted = 0;
        for (int s = 0; s < shots; s++) {
            const auto src = run_chain(len, noise, rng);
            const auto don = run_chain(len, noise, rng);
            const auto out = run_purify(src, don, noise, rng);
            if (!out.accepted) continue;
            accepted++;
            counts[pauli_index(out.x, out.z)]++;
        }
        PurifyEntry e;
        e.length = len;
        e.success_prob = double(accepted) / double(shots);
        e.state = tally_to_state(counts, accepted);
        e.cnot_error = effective_cnot_error(e.state);
        table.entries.push_back(e);
    }
    return table;
}

}  // namespace bbqec::purify
