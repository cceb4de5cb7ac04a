#pragma once

#include <istream>
#include <string>
#include <vector>

#include "dynppe/graph.hpp"

namespace dynppe {

// A parsed edge-event stream. Events before the first snapshot boundary
// build the initial graph; each subsequent block is one snapshot delta.
struct ParsedStream {
  std::vector<EdgeEvent> initial_events;
  std::vector<SnapshotDelta> deltas;

  // Number of snapshots including the initial one (deltas.size() + 1).
  std::size_t snapshot_count() const { return deltas.size() + 1; }
  std::size_t event_count() const;
};

// Parses the edge-event file format:
//   timestamp<TAB>op<TAB>u<TAB>v      with op in {+, -}
// Lines beginning with "#snapshot" close the current delta; other lines
// beginning with '#' and blank lines are ignored. Timestamps must be
// monotone non-decreasing across the stream.
//
// When snapshot_every > 0 the stream must contain no "#snapshot" markers;
// a boundary is inserted after every snapshot_every events instead.
//
// Throws Error(kParse) with a line number on malformed input.
ParsedStream parse_event_stream(std::istream& in, int snapshot_every = 0);
ParsedStream parse_event_file(const std::string& path, int snapshot_every = 0);

// Builds the initial graph from a parsed stream (snapshot index stays 0).
GraphState build_initial_graph(const ParsedStream& stream);

// Reads a subset file: one node id per line, '#' comments and blanks ignored.
std::vector<NodeId> parse_subset_file(const std::string& path);

}  // namespace dynppe
