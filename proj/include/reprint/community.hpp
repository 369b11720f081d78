#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "reprint/graph.hpp"

namespace reprint {

struct Partition {
    std::map<std::string, int> community;  // ids are 0..k-1, numbered by smallest member name
    double modularity = 0.0;
};

/// Newman modularity of the undirected projection, where the weight between u and v
/// is w(u->v) + w(v->u):
///
///   Q = sum_c [ L_c / m  -  resolution * (d_c / 2m)^2 ]
///
/// L_c is the internal weight of community c, d_c its total degree, m the total weight.
/// An edgeless graph has Q = 0. Throws std::invalid_argument if a node has no community.
double modularity(const RepublishGraph& graph, const std::map<std::string, int>& community,
                  double resolution = 1.0);

/// Louvain local moving + aggregation on the undirected projection. Nodes are visited
/// in an order shuffled by `seed`; the result does not depend on input node order.
Partition louvain(const RepublishGraph& graph, double resolution = 1.0, std::uint64_t seed = 0);

}  // namespace reprint
