#include "dynppe/export.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dynppe/errors.hpp"

namespace dynppe {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kParse, "cannot open file for digest: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return fnv1a64(buffer.str());
}

void write_manifest(const std::string& path, const RunManifest& m) {
  nlohmann::json j;
  j["tool_version"] = kToolVersion;
  j["method"] = m.method;
  j["config"] = {
      {"alpha", m.alpha},           {"epsilon", m.epsilon},
      {"beta", m.beta},             {"dim", m.dim},
      {"seed_index", m.seed_index}, {"seed_sign", m.seed_sign},
      {"parallelism", m.parallelism},
  };
  j["input"] = {
      {"event_count", m.event_count},
      {"snapshot_count", m.snapshot_count},
      {"node_count", m.node_count},
      {"degree_sum_per_snapshot", m.degree_sum_per_snapshot},
      {"events_digest", m.events_digest},
      {"subset_digest", m.subset_digest},
      {"subset_size", m.subset_size},
  };
  j["wall_time_seconds"] = m.wall_time_seconds;

  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::kParse, "cannot write manifest: " + path);
  }
  out << j.dump(2) << '\n';
}

void write_embeddings_tsv(const std::string& path,
                          const std::map<NodeId, EmbeddingHistory>& histories,
                          int dim, const std::string& method) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::kParse, "cannot write embeddings: " + path);
  }
  out << "# dynppe-embeddings " << kEmbeddingFormatVersion << " method="
      << method << " dim=" << dim << '\n';
  out << std::setprecision(9);

  // Rows grouped by snapshot, nodes ascending within each.
  int max_snapshot = -1;
  for (const auto& [node, history] : histories) {
    if (!history.empty()) {
      max_snapshot = std::max(max_snapshot, history.back().snapshot_index);
    }
  }
  for (int snapshot = 0; snapshot <= max_snapshot; ++snapshot) {
    for (const auto& [node, history] : histories) {
      const HistoryEntry* entry = nullptr;
      for (const HistoryEntry& h : history) {
        if (h.snapshot_index == snapshot) {
          entry = &h;
          break;
        }
      }
      if (entry == nullptr) continue;
      out << snapshot << '\t' << node << '\t';
      for (std::size_t i = 0; i < entry->embedding.size(); ++i) {
        if (i > 0) out << ',';
        out << entry->embedding[i];
      }
      out << '\n';
    }
  }
}

EmbeddingTable read_embeddings_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::kParse, "cannot open embeddings: " + path);
  }
  EmbeddingTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      std::istringstream hdr(line);
      std::string hash, tag, version, field;
      hdr >> hash >> tag >> version;
      if (hash != "#" || tag != "dynppe-embeddings") {
        throw Error(ErrorKind::kParse,
                    path + ": missing embeddings header line");
      }
      while (hdr >> field) {
        if (field.rfind("dim=", 0) == 0) {
          try {
            table.dim = std::stoi(field.substr(4));
          } catch (const std::exception&) {
            throw Error(ErrorKind::kParse, path + ": bad dim in header");
          }
        } else if (field.rfind("method=", 0) == 0) {
          table.method = field.substr(7);
        }
      }
      if (table.dim < 1) {
        throw Error(ErrorKind::kParse, path + ": header carries no dim");
      }
      header_seen = true;
      continue;
    }
    if (line.front() == '#') continue;
    std::istringstream row(line);
    int snapshot = 0;
    NodeId node = 0;
    std::string values;
    if (!(row >> snapshot >> node >> values)) {
      throw Error(ErrorKind::kParse,
                  path + ": bad row at line " + std::to_string(line_no));
    }
    EmbeddingVector w;
    w.reserve(static_cast<std::size_t>(table.dim));
    std::istringstream vs(values);
    std::string item;
    while (std::getline(vs, item, ',')) {
      try {
        w.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw Error(ErrorKind::kParse, path + ": bad component at line " +
                                           std::to_string(line_no));
      }
    }
    if (w.size() != static_cast<std::size_t>(table.dim)) {
      throw Error(ErrorKind::kParse,
                  path + ": row dimension mismatch at line " +
                      std::to_string(line_no));
    }
    table.rows[snapshot][node] = std::move(w);
  }
  if (!header_seen) {
    throw Error(ErrorKind::kParse, path + ": empty embeddings file");
  }
  return table;
}

void write_changes_tsv(const std::string& path,
                       const std::vector<ChangeRecord>& records) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorKind::kParse, "cannot write change report: " + path);
  }
  out << "# dynppe-changes v1\n";
  out << std::fixed << std::setprecision(6);
  for (const ChangeRecord& r : records) {
    out << r.movement.snapshot_to << '\t' << r.movement.node << '\t'
        << r.zscore << '\t' << r.movement.distance << '\t'
        << r.movement.degree_delta << '\n';
  }
}

}  // namespace dynppe
