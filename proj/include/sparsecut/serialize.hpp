#pragma once

#include "json.hpp"
#include "sparsecut/cover.hpp"
#include "sparsecut/embedding.hpp"
#include "sparsecut/graph.hpp"
#include "sparsecut/rounding.hpp"
#include "sparsecut/sdp.hpp"
#include "sparsecut/structure.hpp"

namespace sparsecut::io {

using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& q);  // {num, den, value}
Rational rational_from_json(const Json& j);

Json solution_to_json(const EmbeddingSolution& sol);  // {n, m, vectors, objective, kind, tolerances}
EmbeddingSolution solution_from_json(const Json& j);

/// Patterns as bitstrings: character i is b(R[i]).
Json sa_to_json(const sdp::SASolution& sa);
sdp::SASolution sa_from_json(const Json& j);

Json distance_to_json(const DistanceMatrix& d);
DistanceMatrix distance_from_json(const Json& j);

Json partition_to_json(const Partition& p);
Partition partition_from_json(const Json& j);

Json cover_to_json(const Cover& c);
Cover cover_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json cut_to_json(const Cut& c);
Cut cut_from_json(const Json& j);
Json rounded_cut_to_json(const rounding::RoundedCut& c);  // {S, expansion, cut_edges, method, seed, trace}

Json outcome_to_json(const structure::StructureOutcome& o);
structure::StructureOutcome outcome_from_json(const Json& j);

}  // namespace sparsecut::io
