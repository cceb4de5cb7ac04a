#include "dynppe/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "dynppe/errors.hpp"

namespace dynppe {

double movement(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "movement between vectors of different dimension");
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

std::map<NodeId, double> zscores(const std::map<NodeId, double>& movements) {
  std::map<NodeId, double> out;
  if (movements.empty()) return out;

  double mu = 0.0;
  for (const auto& [node, dist] : movements) mu += dist;
  mu /= static_cast<double>(movements.size());

  double var = 0.0;
  for (const auto& [node, dist] : movements) {
    var += (dist - mu) * (dist - mu);
  }
  var /= static_cast<double>(movements.size());
  const double sigma = std::sqrt(var);

  // Movements that are equal up to rounding leave sub-epsilon sigma; treat
  // the group as constant rather than standardizing noise.
  constexpr double kSigmaFloor = 1e-12;
  for (const auto& [node, dist] : movements) {
    out[node] = sigma > kSigmaFloor ? (dist - mu) / sigma : 0.0;
  }
  return out;
}

std::vector<ZScoreRecord> zscore_records(
    const std::vector<MovementRecord>& movements) {
  std::map<NodeId, double> distances;
  for (const MovementRecord& m : movements) {
    distances[m.node] = m.distance;
  }
  std::map<NodeId, double> z = zscores(distances);
  std::vector<ZScoreRecord> out;
  out.reserve(movements.size());
  for (const MovementRecord& m : movements) {
    out.push_back({m.node, m.snapshot_to, z.at(m.node)});
  }
  return out;
}

std::vector<ChangeRecord> rank_changes(std::vector<ChangeRecord> records,
                                       std::int64_t min_degree_delta) {
  records.erase(std::remove_if(records.begin(), records.end(),
                               [&](const ChangeRecord& r) {
                                 return r.movement.degree_delta <=
                                        min_degree_delta;
                               }),
                records.end());
  std::sort(records.begin(), records.end(),
            [](const ChangeRecord& a, const ChangeRecord& b) {
              if (a.zscore != b.zscore) return a.zscore > b.zscore;
              return a.movement.node < b.movement.node;
            });
  return records;
}

}  // namespace dynppe
