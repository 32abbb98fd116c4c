#include "qirm/clustering.hpp"

#include <algorithm>
#include <stdexcept>

namespace qirm::clustering {

ParameterMaxima population_maxima(std::span<const NodeSpec> nodes)
{
    if (nodes.empty()) throw std::domain_error("population_maxima: empty node list");
    ParameterMaxima m{0.0, 0.0, 0.0, 0.0};
    for (const auto& n : nodes) {
        m.bw = std::max(m.bw, n.bw);
        m.sp = std::max(m.sp, n.sp);
        m.mz = std::max(m.mz, n.mz);
        m.al = std::max(m.al, n.al);
    }
    return m;
}

double node_weight(double bw, double sp, double mz, double al, bool normalize, const ParameterMaxima& maxima)
{
    if (!(bw > 0.0 && sp > 0.0 && mz > 0.0 && al > 0.0)) {
        throw std::domain_error("node_weight: parameters must be strictly positive");
    }
    if (normalize) {
        if (!(maxima.bw > 0.0 && maxima.sp > 0.0 && maxima.mz > 0.0 && maxima.al > 0.0)) {
            throw std::domain_error("node_weight: maxima must be strictly positive");
        }
        bw /= maxima.bw;
        sp /= maxima.sp;
        mz /= maxima.mz;
        al /= maxima.al;
    }
    return (bw + sp + mz) / al;
}

void assign_weights(std::span<NodeSpec> nodes, bool normalize)
{
    if (nodes.empty()) return;
    const auto maxima = normalize ? population_maxima(nodes) : ParameterMaxima{};
    for (auto& n : nodes) n.weight = node_weight(n.bw, n.sp, n.mz, n.al, normalize, maxima);
}

WeightVector weight_vector(std::span<const NodeSpec> nodes)
{
    if (nodes.empty()) throw std::domain_error("weight_vector: empty node list");
    WeightVector out;
    out.reserve(nodes.size());
    for (const auto& n : nodes) out.emplace_back(n.id, n.weight);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

Partition partition(const WeightVector& weights, double beta)
{
    Partition p;
    for (const auto& [id, w] : weights) (w >= beta ? p.strong : p.weak).push_back(id);
    std::sort(p.strong.begin(), p.strong.end());
    std::sort(p.weak.begin(), p.weak.end());
    return p;
}

Partition cluster_nodes(std::span<NodeSpec> nodes, bool normalize, double beta)
{
    assign_weights(nodes, normalize);
    auto p = partition(weight_vector(nodes), beta);
    for (auto& n : nodes) n.cluster = ClusterTag::Weak;
    for (NodeId id : p.strong) {
        auto it = std::find_if(nodes.begin(), nodes.end(), [id](const NodeSpec& n) { return n.id == id; });
        it->cluster = ClusterTag::Strong;
    }
    return p;
}

}  // namespace qirm::clustering
