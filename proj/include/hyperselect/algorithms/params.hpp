#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperselect {

// Quaternion and octonion runs share these defaults.

struct AbcParams {
    std::size_t trials_limit = 1000;
};

struct PsoParams {
    double c1 = 1.7;
    double c2 = 1.7;
    double w = 0.7;
};

struct AiwpsoParams {
    double c1 = 1.7;
    double c2 = 1.7;
    double w_min = 0.5;
    double w_max = 1.5;
};

struct BaParams {
    double f_min = 0.0;
    double f_max = 100.0;
    double loudness = 1.5;
    double pulse_rate = 0.5;
    /// Scale of the Gaussian local walk around the best bat.
    double local_walk = 0.001;
};

struct CsParams {
    double beta = 1.5;
    double p_discard = 0.25;
    double step = 0.8;
};

struct FaParams {
    double alpha = 0.2;
    double beta0 = 1.0;
    double gamma = 1.0;
};

struct FpaParams {
    double beta = 1.5;
    double p_local = 0.8;
};

struct AlgorithmParams {
    AbcParams abc;
    AiwpsoParams aiwpso;
    BaParams ba;
    CsParams cs;
    FaParams fa;
    FpaParams fpa;
    PsoParams pso;

    void validate() const {
        auto prob = [](double v, const char* what) {
            if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
        };
        if (!(aiwpso.w_min <= aiwpso.w_max)) throw std::invalid_argument("aiwpso: w_min must not exceed w_max");
        if (!(ba.f_min <= ba.f_max)) throw std::invalid_argument("ba: f_min must not exceed f_max");
        prob(ba.pulse_rate, "ba pulse rate");
        prob(cs.p_discard, "cs discard probability");
        prob(fpa.p_local, "fpa local pollination probability");
        if (!(cs.beta > 0.0 && cs.beta <= 2.0)) throw std::invalid_argument("cs: beta must lie in (0, 2]");
        if (!(fpa.beta > 0.0 && fpa.beta <= 2.0)) throw std::invalid_argument("fpa: beta must lie in (0, 2]");
        if (fa.gamma < 0.0) throw std::invalid_argument("fa: gamma must be non-negative");
    }
};

}  // namespace hyperselect
