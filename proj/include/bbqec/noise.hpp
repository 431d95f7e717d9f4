#pragma once

namespace bbqec {

// Circuit-level depolarizing noise. Rates are multiples of the base p:
// two-qubit gates x1, single-qubit gates x0.1, measurement flips x1,
// reset flips x0.1, idling x0.02 per physical step.
struct NoiseModel {
    double p = 0.0;
    double two_qubit_mult = 1.0;
    double single_qubit_mult = 0.1;
    double measure_mult = 1.0;
    double reset_mult = 0.1;
    double idle_mult = 0.02;

    double two_qubit() const { return p * two_qubit_mult; }
    double single_qubit() const { return p * single_qubit_mult; }
    double measure_flip() const { return p * measure_mult; }
    double reset_flip() const { return p * reset_mult; }
    double idle() const { return p * idle_mult; }

    static NoiseModel standard(double p) {
        NoiseModel n;
        n.p = p;
        return n;
    }
    static NoiseModel noiseless() { return NoiseModel{}; }
    NoiseModel without_idle() const {
        NoiseModel n = *this;
        n.idle_mult = 0.0;
        return n;
    }
};

}  // namespace bbqec
