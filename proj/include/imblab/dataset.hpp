#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "imblab/errors.hpp"
#include "imblab/rng.hpp"
#include "imblab/tensor.hpp"

namespace imblab {

// One labeled series: a (n_dims x length) matrix stored row-major.
struct Instance {
    std::string id;
    int label = 0;
    std::size_t n_dims = 0;
    std::size_t length = 0;
    std::vector<double> values;

    double at(std::size_t d, std::size_t t) const { return values[d * length + t]; }
    double& at(std::size_t d, std::size_t t) { return values[d * length + t]; }
};

// Fixed-length, fixed-dimensionality labeled collection. Immutable by
// convention once built; all consumers share it read-only.
struct TimeSeriesDataset {
    std::string name;
    int n_classes = 0;
    std::size_t n_dims = 0;
    std::size_t length = 0;
    std::vector<Instance> instances;
    // original label text per dense index, recorded at ingestion
    std::vector<std::string> label_names;

    std::size_t size() const { return instances.size(); }

    std::vector<std::size_t> class_counts() const {
        std::vector<std::size_t> counts(static_cast<std::size_t>(n_classes), 0);
        for (const Instance& ins : instances) counts[static_cast<std::size_t>(ins.label)]++;
        return counts;
    }

    std::vector<std::vector<std::size_t>> indices_by_class() const {
        std::vector<std::vector<std::size_t>> by(static_cast<std::size_t>(n_classes));
        for (std::size_t i = 0; i < instances.size(); ++i) {
            by[static_cast<std::size_t>(instances[i].label)].push_back(i);
        }
        return by;
    }

    std::string label_name(int c) const {
        if (c >= 0 && static_cast<std::size_t>(c) < label_names.size()) return label_names[static_cast<std::size_t>(c)];
        return std::to_string(c);
    }

    const Instance& by_id(const std::string& id) const {
        for (const Instance& ins : instances) {
            if (ins.id == id) return ins;
        }
        throw ArgumentError("unknown instance id: " + id);
    }

    std::unordered_map<std::string, std::size_t> id_index() const {
        std::unordered_map<std::string, std::size_t> m;
        m.reserve(instances.size());
        for (std::size_t i = 0; i < instances.size(); ++i) m.emplace(instances[i].id, i);
        return m;
    }

    void validate() const {
        if (n_classes < 1) throw DataError(name + ": dataset has no classes");
        if (instances.empty()) throw DataError(name + ": dataset has no instances");
        const std::size_t want = n_dims * length;
        std::vector<std::size_t> counts(static_cast<std::size_t>(n_classes), 0);
        std::unordered_map<std::string, int> seen;
        for (const Instance& ins : instances) {
            if (ins.n_dims != n_dims || ins.length != length || ins.values.size() != want) {
                throw DataError(name + ": instance " + ins.id + " shape mismatch");
            }
            if (ins.label < 0 || ins.label >= n_classes) {
                throw DataError(name + ": instance " + ins.id + " label out of range");
            }
            for (double v : ins.values) {
                if (!std::isfinite(v)) throw DataError(name + ": non-finite value in instance " + ins.id);
            }
            if (!seen.emplace(ins.id, 1).second) throw DataError(name + ": duplicate instance id " + ins.id);
            counts[static_cast<std::size_t>(ins.label)]++;
        }
        for (int c = 0; c < n_classes; ++c) {
            if (counts[static_cast<std::size_t>(c)] == 0) {
                throw DataError(name + ": class " + label_name(c) + " has no instances");
            }
        }
    }
};

// (form, rho, mu) recipe for deriving an imbalanced subset.
struct ImbalanceSpec {
    enum class Form { Step, Linear };

    Form form = Form::Step;
    double rho = 1.0;
    double mu = 0.5;  // Step only
    std::uint64_t seed = 0;

    void validate(int n_classes) const {
        if (!(rho >= 1.0)) throw SpecError("imbalance: rho must be >= 1");
        if (form == Form::Step) {
            if (!(mu > 0.0 && mu < 1.0)) throw SpecError("imbalance: mu must lie in (0,1)");
            const long m = std::lround(mu * n_classes);
            if (m < 1) throw SpecError("imbalance: round(mu*C) must be >= 1");
            if (m >= n_classes) throw SpecError("imbalance: round(mu*C) leaves no majority class");
        }
    }
};

struct FoldAssignment {
    int k = 0;
    std::map<std::string, int> fold_of;

    std::vector<std::vector<std::size_t>> fold_indices(const TimeSeriesDataset& ds) const {
        std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < ds.instances.size(); ++i) {
            folds[static_cast<std::size_t>(fold_of.at(ds.instances[i].id))].push_back(i);
        }
        return folds;
    }
};

// rho = max class count / min class count; mu = fraction of classes below the max.
inline std::pair<double, double> measure_imbalance(const TimeSeriesDataset& ds) {
    const auto counts = ds.class_counts();
    const std::size_t maxc = *std::max_element(counts.begin(), counts.end());
    const std::size_t minc = *std::min_element(counts.begin(), counts.end());
    std::size_t below = 0;
    for (std::size_t c : counts) {
        if (c < maxc) below++;
    }
    const double rho = static_cast<double>(maxc) / static_cast<double>(minc);
    const double mu = static_cast<double>(below) / static_cast<double>(counts.size());
    return {rho, mu};
}

namespace detail {

inline TimeSeriesDataset subset_by_indices(const TimeSeriesDataset& ds, const std::vector<bool>& keep) {
    TimeSeriesDataset out;
    out.name = ds.name;
    out.n_classes = ds.n_classes;
    out.n_dims = ds.n_dims;
    out.length = ds.length;
    out.label_names = ds.label_names;
    for (std::size_t i = 0; i < ds.instances.size(); ++i) {
        if (keep[i]) out.instances.push_back(ds.instances[i]);
    }
    return out;
}

// Seeded uniform subsample without replacement: keep `target` of `pool`.
inline void mark_subsample(std::vector<bool>& keep, const std::vector<std::size_t>& pool,
                           std::size_t target, Rng& rng) {
    std::vector<std::size_t> chosen = rng.sample_without_replacement(pool, target);
    for (std::size_t i : pool) keep[i] = false;
    for (std::size_t i : chosen) keep[i] = true;
}

}  // namespace detail

// Derive an imbalanced variant of an (approximately) balanced dataset.
// Step: round(mu*C) seeded-random classes shrink to majority/rho; Linear:
// class counts interpolate between max_count and max_count/rho over a
// seeded random class order. Instances are only ever removed, never made up.
inline TimeSeriesDataset apply_imbalance(const TimeSeriesDataset& ds, const ImbalanceSpec& spec) {
    spec.validate(ds.n_classes);
    const auto counts = ds.class_counts();
    const std::size_t maxc = *std::max_element(counts.begin(), counts.end());
    const std::size_t minc = *std::min_element(counts.begin(), counts.end());
    if (static_cast<double>(maxc) > 1.2 * static_cast<double>(minc)) {
        throw PreconditionError(ds.name + ": input not balanced (max/min class count > 1.2)");
    }
    if (spec.rho == 1.0) return ds;  // identity; mu irrelevant

    const std::size_t C = static_cast<std::size_t>(ds.n_classes);
    const auto by_class = ds.indices_by_class();
    std::vector<bool> keep(ds.instances.size(), true);

    std::vector<std::size_t> order(C);
    std::iota(order.begin(), order.end(), 0);
    Rng class_rng(derive_seed(spec.seed, "classes"));
    class_rng.shuffle(order);

    if (spec.form == ImbalanceSpec::Form::Step) {
        const std::size_t m = static_cast<std::size_t>(std::lround(spec.mu * static_cast<double>(C)));
        std::vector<bool> minority(C, false);
        for (std::size_t r = 0; r < m; ++r) minority[order[r]] = true;
        std::size_t majority_ref = 0;
        for (std::size_t c = 0; c < C; ++c) {
            if (!minority[c]) majority_ref = std::max(majority_ref, counts[c]);
        }
        const std::size_t target =
            static_cast<std::size_t>(std::llround(static_cast<double>(majority_ref) / spec.rho));
        if (target < 1) throw SpecError(ds.name + ": rho would empty a minority class");
        for (std::size_t c = 0; c < C; ++c) {
            if (!minority[c] || counts[c] <= target) continue;
            Rng rng(derive_seed(spec.seed, "class", static_cast<std::uint64_t>(c)));
            detail::mark_subsample(keep, by_class[c], target, rng);
        }
    } else {
        const double lo = static_cast<double>(maxc) / spec.rho;
        for (std::size_t r = 0; r < C; ++r) {
            const std::size_t c = order[r];
            double t = static_cast<double>(maxc);
            if (C > 1) {
                t = lo + (static_cast<double>(maxc) - lo) * static_cast<double>(r) /
                             static_cast<double>(C - 1);
            }
            const std::size_t target = static_cast<std::size_t>(std::llround(t));
            if (target < 1) throw SpecError(ds.name + ": rho would empty a minority class");
            if (counts[c] <= target) continue;
            Rng rng(derive_seed(spec.seed, "class", static_cast<std::uint64_t>(c)));
            detail::mark_subsample(keep, by_class[c], target, rng);
        }
    }
    TimeSeriesDataset out = detail::subset_by_indices(ds, keep);
    out.validate();
    return out;
}

// Stratified k-fold assignment: per-class seeded shuffle, round-robin deal.
// Per-class counts across folds differ by at most one.
inline FoldAssignment stratified_kfold(const TimeSeriesDataset& ds, int k, std::uint64_t seed) {
    if (k < 1) throw ArgumentError("stratified_kfold: k must be >= 1");
    const auto counts = ds.class_counts();
    for (int c = 0; c < ds.n_classes; ++c) {
        if (counts[static_cast<std::size_t>(c)] < static_cast<std::size_t>(k)) {
            throw StratificationError(ds.name + ": class " + ds.label_name(c) + " has " +
                                      std::to_string(counts[static_cast<std::size_t>(c)]) +
                                      " instances, fewer than k=" + std::to_string(k));
        }
    }
    FoldAssignment fa;
    fa.k = k;
    const auto by_class = ds.indices_by_class();
    for (int c = 0; c < ds.n_classes; ++c) {
        std::vector<std::size_t> idx = by_class[static_cast<std::size_t>(c)];
        Rng rng(derive_seed(seed, "class", static_cast<std::uint64_t>(c)));
        rng.shuffle(idx);
        for (std::size_t i = 0; i < idx.size(); ++i) {
            fa.fold_of[ds.instances[idx[i]].id] = static_cast<int>(i % static_cast<std::size_t>(k));
        }
    }
    return fa;
}

// Synthetic 4-class stand-in for the simulated TwoPatterns set. Each class
// is an ordered pair of step patterns, one per half of the series: a narrow
// step in the left half and a wide step in the right half, each either
// rising (-1 then +1) or falling (+1 then -1), placed at a seeded random
// offset on top of Gaussian background noise of sd `noise_sd`.
// Class index = 2*(first is falling) + (second is falling).
inline TimeSeriesDataset synth_two_patterns(std::size_t n_per_class, std::size_t length,
                                            double noise_sd, std::uint64_t seed) {
    if (length < 16) throw ArgumentError("synth_two_patterns: length must be >= 16");
    if (n_per_class < 1) throw ArgumentError("synth_two_patterns: n_per_class must be >= 1");
    if (noise_sd < 0.0) throw ArgumentError("synth_two_patterns: noise_sd must be >= 0");

    const std::size_t half = length / 2;
    const std::size_t w1 = std::max<std::size_t>(2, 2 * (length / 8));
    const std::size_t w2 = std::max<std::size_t>(2, 2 * (3 * length / 16));

    TimeSeriesDataset ds;
    ds.name = "two_patterns";
    ds.n_classes = 4;
    ds.n_dims = 1;
    ds.length = length;
    for (int c = 0; c < 4; ++c) ds.label_names.push_back(std::to_string(c));

    Rng rng(derive_seed(seed, "two_patterns"));
    const auto add_step = [](std::vector<double>& v, std::size_t offset, std::size_t width, bool falling) {
        const double first = falling ? 1.0 : -1.0;
        for (std::size_t t = 0; t < width; ++t) {
            v[offset + t] += (t < width / 2) ? first : -first;
        }
    };

    for (int c = 0; c < 4; ++c) {
        const bool first_falling = (c & 2) != 0;
        const bool second_falling = (c & 1) != 0;
        for (std::size_t i = 0; i < n_per_class; ++i) {
            Instance ins;
            ins.id = "tp" + std::to_string(c) + "_" + std::to_string(i);
            ins.label = c;
            ins.n_dims = 1;
            ins.length = length;
            ins.values.resize(length, 0.0);
            if (noise_sd > 0.0) {
                for (double& v : ins.values) v = rng.normal(0.0, noise_sd);
            }
            const std::size_t o1 = rng.uniform_index(half - w1 + 1);
            const std::size_t o2 = half + rng.uniform_index(length - half - w2 + 1);
            add_step(ins.values, o1, w1, first_falling);
            add_step(ins.values, o2, w2, second_falling);
            ds.instances.push_back(std::move(ins));
        }
    }
    ds.validate();
    return ds;
}

// Assemble a [B, n_dims, length] batch tensor for the given instance indices.
inline Tensor make_batch(const TimeSeriesDataset& ds, const std::vector<std::size_t>& indices) {
    Tensor t({indices.size(), ds.n_dims, ds.length});
    const std::size_t stride = ds.n_dims * ds.length;
    for (std::size_t b = 0; b < indices.size(); ++b) {
        const Instance& ins = ds.instances[indices[b]];
        std::copy(ins.values.begin(), ins.values.end(), t.data.begin() + static_cast<std::ptrdiff_t>(b * stride));
    }
    return t;
}

inline std::vector<int> batch_labels(const TimeSeriesDataset& ds, const std::vector<std::size_t>& indices) {
    std::vector<int> labels(indices.size());
    for (std::size_t b = 0; b < indices.size(); ++b) labels[b] = ds.instances[indices[b]].label;
    return labels;
}

}  // namespace imblab
