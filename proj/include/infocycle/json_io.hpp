#ifndef INFOCYCLE_JSON_IO_HPP
#define INFOCYCLE_JSON_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "infocycle/digraph.hpp"
#include "infocycle/generate.hpp"
#include "infocycle/info_measures.hpp"
#include "infocycle/joint_distribution.hpp"
#include "infocycle/verify.hpp"

namespace infocycle {

// Distribution file format:
//   {"variables":[{"name":"X","cardinality":2},...],"probabilities":[...]}
// row-major, last variable fastest. Parsing validates every invariant;
// unknown top-level fields (e.g. search metadata) are ignored.
nlohmann::json distribution_to_json(const JointDistribution& dist);
JointDistribution distribution_from_json(const nlohmann::json& j);
JointDistribution read_distribution(const std::filesystem::path& path);
void write_distribution(const std::filesystem::path& path, const JointDistribution& dist);

// Graph input: either a bare zero-based edge list [[u,v],...] (node count
// inferred as max index + 1) or {"nodes":n,"edges":[[u,v],...]}.
Digraph digraph_from_json(const nlohmann::json& j);
Digraph read_digraph(const std::filesystem::path& path);
nlohmann::json digraph_to_json(const Digraph& g);

// Atom table: [{"atom":mask,"subset":[names...],"value_bits":v},...] sorted
// by ascending atom bitmask.
nlohmann::json atom_table_to_json(const AtomTable& atoms,
                                  const std::vector<Variable>& variables);

nlohmann::json report_to_json(const VerificationReport& report);

// Search result: the distribution file fields plus a metadata block.
nlohmann::json search_result_to_json(const SearchResult& result);

std::string stable_dump(const nlohmann::json& j);  // 2-space indent + newline
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace infocycle

#endif
