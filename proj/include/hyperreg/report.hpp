#pragma once

#include <string>

#include <json.hpp>

#include "hyperreg/core.hpp"
#include "hyperreg/counting.hpp"
#include "hyperreg/density.hpp"
#include "hyperreg/embed.hpp"
#include "hyperreg/partition.hpp"
#include "hyperreg/pipeline.hpp"
#include "hyperreg/ramsey.hpp"
#include "hyperreg/triadreg.hpp"

namespace hyperreg {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Counts as JSON numbers when they fit in 64 bits, decimal strings otherwise.
json count_json(const Count& c);
/// Rationals as "p/q" strings.
json rational_json(const Rational& q);

json to_json(Vertex v);
json to_json(const std::vector<Vertex>& vs);
json to_json(const GraphRegVerdict& v);
json to_json(const TriadRegVerdict& v);
json to_json(const ComplexRegReport& r);
json to_json(const PartitionCheck& c);
json to_json(const RegularPartitionCheck& c);
json to_json(const PartitionReport& r);
json to_json(const Hypergraph3& h);
json to_json(const TuranResult& r);
json to_json(const TriadSystem& s);
json to_json(const CliqueColouring& c);
json to_json(const EmbedResult& r);
json to_json(const CountRatio& r);
json to_json(const TypicalityReport& r);
json to_json(const UsefulnessReport& r);
json to_json(const RamseyResult& r);
json to_json(const PipelineResult& r);
json to_json(const MomentReport& r);

/// Embedding as `map <class> <pat_idx> <host_idx>` lines.
std::string embedding_lines(const Complex& pattern, const Embedding& phi);

}  // namespace hyperreg
