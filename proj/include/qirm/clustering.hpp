#pragma once

#include "qirm/model.hpp"

#include <span>
#include <utility>
#include <vector>

namespace qirm::clustering {

// Per-parameter population maxima used by the normalized weight.
struct ParameterMaxima {
    double bw = 1.0;
    double sp = 1.0;
    double mz = 1.0;
    double al = 1.0;
};

ParameterMaxima population_maxima(std::span<const NodeSpec> nodes);

// (bw + sp + mz) / al, optionally with every parameter first divided by its
// population maximum. Throws std::domain_error on non-positive input.
double node_weight(double bw, double sp, double mz, double al, bool normalize = false,
                   const ParameterMaxima& maxima = {});

// Recomputes `weight` on every node.
void assign_weights(std::span<NodeSpec> nodes, bool normalize);

using WeightVector = std::vector<std::pair<NodeId, double>>;

// Sorted by weight descending, ties by ascending id.
WeightVector weight_vector(std::span<const NodeSpec> nodes);

struct Partition {
    std::vector<NodeId> strong;  // ascending id
    std::vector<NodeId> weak;    // ascending id
};

// Strong iff weight >= beta.
Partition partition(const WeightVector& weights, double beta);

// Weights, partition and cluster tags in one pass.
Partition cluster_nodes(std::span<NodeSpec> nodes, bool normalize, double beta);

}  // namespace qirm::clustering
