#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hyperselect/algorithms/bat.hpp"
#include "hyperselect/algorithms/bee_colony.hpp"
#include "hyperselect/algorithms/cuckoo.hpp"
#include "hyperselect/algorithms/firefly.hpp"
#include "hyperselect/algorithms/flower.hpp"
#include "hyperselect/algorithms/levy.hpp"
#include "hyperselect/algorithms/params.hpp"
#include "hyperselect/algorithms/pso.hpp"
#include "hyperselect/optimizer.hpp"

namespace hyperselect {

enum class AlgorithmKind { abc, aiwpso, ba, cs, fa, fpa, pso };

inline constexpr std::array kAllAlgorithms{AlgorithmKind::abc, AlgorithmKind::aiwpso, AlgorithmKind::ba,
                                           AlgorithmKind::cs,  AlgorithmKind::fa,     AlgorithmKind::fpa,
                                           AlgorithmKind::pso};

inline constexpr std::string_view to_string(AlgorithmKind kind) {
    switch (kind) {
        case AlgorithmKind::abc: return "abc";
        case AlgorithmKind::aiwpso: return "aiwpso";
        case AlgorithmKind::ba: return "ba";
        case AlgorithmKind::cs: return "cs";
        case AlgorithmKind::fa: return "fa";
        case AlgorithmKind::fpa: return "fpa";
        case AlgorithmKind::pso: return "pso";
    }
    return "?";
}

inline AlgorithmKind parse_algorithm(std::string_view token) {
    for (auto kind : kAllAlgorithms) {
        if (to_string(kind) == token) return kind;
    }
    throw std::invalid_argument("unknown algorithm '" + std::string(token) + "' (expected abc|aiwpso|ba|cs|fa|fpa|pso)");
}

/// Search-space token: std (D=1), quat (D=4), oct (D=8).
inline std::size_t parse_space(std::string_view token) {
    if (token == "std") return 1;
    if (token == "quat") return 4;
    if (token == "oct") return 8;
    throw std::invalid_argument("unknown space '" + std::string(token) + "' (expected std|quat|oct)");
}

inline std::string_view space_token(std::size_t dim) {
    switch (dim) {
        case 1: return "std";
        case 4: return "quat";
        case 8: return "oct";
        default: throw std::invalid_argument("space dimension has no token: " + std::to_string(dim));
    }
}

/// Display label: PSO, QPSO, OPSO, ...
inline std::string technique_label(AlgorithmKind kind, std::size_t dim) {
    std::string name(to_string(kind));
    for (auto& c : name) c = static_cast<char>(c - 'a' + 'A');
    if (dim == 4) return "Q" + name;
    if (dim == 8) return "O" + name;
    return name;
}

inline RunResult run_algorithm(AlgorithmKind kind, const AlgorithmParams& params, const SearchSpace& space,
                               const Objective& objective, std::uint64_t seed, const RunOptions& options = {},
                               const IterationObserver& observer = {}) {
    params.validate();
    switch (kind) {
        case AlgorithmKind::abc: return run(space, ArtificialBeeColony(params.abc), objective, seed, options, observer);
        case AlgorithmKind::aiwpso:
            return run(space, AdaptiveInertiaSwarm(params.aiwpso), objective, seed, options, observer);
        case AlgorithmKind::ba: return run(space, BatAlgorithm(params.ba), objective, seed, options, observer);
        case AlgorithmKind::cs: return run(space, CuckooSearch(params.cs), objective, seed, options, observer);
        case AlgorithmKind::fa: return run(space, FireflyAlgorithm(params.fa), objective, seed, options, observer);
        case AlgorithmKind::fpa: return run(space, FlowerPollination(params.fpa), objective, seed, options, observer);
        case AlgorithmKind::pso: return run(space, ParticleSwarm(params.pso), objective, seed, options, observer);
    }
    throw std::invalid_argument("unknown algorithm kind");
}

}  // namespace hyperselect
