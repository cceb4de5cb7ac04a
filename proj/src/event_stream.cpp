#include "dynppe/event_stream.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <set>

#include "dynppe/errors.hpp"

namespace dynppe {

std::size_t ParsedStream::event_count() const {
  std::size_t n = initial_events.size();
  for (const auto& d : deltas) n += d.events.size();
  return n;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(ErrorKind::kParse,
              "line " + std::to_string(line_no) + ": " + what);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_no,
               const char* label) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(),
                                   value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    parse_fail(line_no, std::string("bad ") + label + " field '" +
                            std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

}  // namespace

ParsedStream parse_event_stream(std::istream& in, int snapshot_every) {
  ParsedStream out;
  std::vector<EdgeEvent> block;
  std::int64_t last_timestamp = std::numeric_limits<std::int64_t>::min();
  std::size_t line_no = 0;
  bool initial_closed = false;

  auto close_block = [&]() {
    if (!initial_closed) {
      out.initial_events = std::move(block);
      initial_closed = true;
    } else {
      SnapshotDelta d;
      d.snapshot_index = static_cast<int>(out.deltas.size()) + 1;
      d.events = std::move(block);
      out.deltas.push_back(std::move(d));
    }
    block.clear();
  };

  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.rfind("#snapshot", 0) == 0) {
      if (snapshot_every > 0) {
        parse_fail(line_no,
                   "#snapshot marker not allowed with --snapshot-every");
      }
      close_block();
      continue;
    }
    if (line.front() == '#') continue;

    auto fields = split_tabs(line);
    if (fields.size() != 4) {
      parse_fail(line_no, "expected 4 tab-separated fields, got " +
                              std::to_string(fields.size()));
    }
    EdgeEvent e;
    e.timestamp = parse_number<std::int64_t>(trim(fields[0]), line_no,
                                             "timestamp");
    std::string_view op = trim(fields[1]);
    if (op == "+") {
      e.op = EdgeOp::kInsert;
    } else if (op == "-") {
      e.op = EdgeOp::kDelete;
    } else {
      parse_fail(line_no, "bad op '" + std::string(op) + "' (want + or -)");
    }
    e.u = parse_number<NodeId>(trim(fields[2]), line_no, "node");
    e.v = parse_number<NodeId>(trim(fields[3]), line_no, "node");
    if (e.u == 0xffffffffu || e.v == 0xffffffffu) {
      parse_fail(line_no, "node id 4294967295 is reserved");
    }
    if (e.u == e.v) {
      parse_fail(line_no, "self-loop " + std::to_string(e.u));
    }
    if (e.timestamp < last_timestamp) {
      parse_fail(line_no, "timestamp decreases");
    }
    last_timestamp = e.timestamp;
    block.push_back(e);

    if (snapshot_every > 0 &&
        block.size() == static_cast<std::size_t>(snapshot_every)) {
      close_block();
    }
  }

  if (!block.empty()) close_block();
  return out;
}

ParsedStream parse_event_file(const std::string& path, int snapshot_every) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kParse, "cannot open events file: " + path);
  }
  return parse_event_stream(in, snapshot_every);
}

GraphState build_initial_graph(const ParsedStream& stream) {
  GraphState g;
  for (const EdgeEvent& e : stream.initial_events) {
    g.apply_event(e);
  }
  return g;
}

std::vector<NodeId> parse_subset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kParse, "cannot open subset file: " + path);
  }
  std::set<NodeId> ids;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    ids.insert(parse_number<NodeId>(line, line_no, "node"));
  }
  return {ids.begin(), ids.end()};
}

}  // namespace dynppe
