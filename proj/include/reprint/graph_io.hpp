#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "reprint/graph.hpp"

namespace reprint {

enum class GraphFormat { graphml, dot };

/// GraphML 1.0. Every node attribute in use gets a <key> (type long, double or
/// string); edges carry a `weight` key. Output is byte-deterministic.
void write_graphml(std::ostream& out, const RepublishGraph& graph);

/// Reads documents produced by write_graphml. Throws DataError on malformed input.
RepublishGraph read_graphml(std::istream& in);

/// DOT digraph. Edge penwidth scales with weight (1 to 5); node fillcolor is
/// bucketed by `color_attribute` (categorical palette for text and integer
/// attributes, five shades for real-valued ones, white when missing).
void write_dot(std::ostream& out, const RepublishGraph& graph, const std::string& color_attribute = "community");

/// Writes the graph to `path`. Throws DataError when the file cannot be written.
void export_graph(const RepublishGraph& graph, GraphFormat format, const std::filesystem::path& path,
                  const std::string& color_attribute = "community");

}  // namespace reprint
