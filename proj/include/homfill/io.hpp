// Copyright 2026 The homfill Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON, DOT and text-table export. Keys are emitted in sorted order and no
// field depends on wall-clock time, so equal inputs give equal bytes.

#ifndef HOMFILL_IO_HPP_
#define HOMFILL_IO_HPP_

#include <string>

#include "json.hpp"

#include "homfill/cayley.hpp"
#include "homfill/experiments.hpp"
#include "homfill/extension.hpp"
#include "homfill/filling.hpp"
#include "homfill/surface.hpp"

namespace homfill {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kBallCaveat =
    "values are restricted to a finite ball of the Cayley complex; fillings leaving the "
    "ball are not seen, so filling values are upper bounds and FA values lower bounds";

/// {tool, version, config, ball_radius, caveat, seed, result}.
Json envelope(const Json& config, int ball_radius, unsigned long seed, Json result);

Json to_json(const CayleyBall& ball);
Json to_json(const CayleyBall& ball, const OneCycle& gamma);
Json to_json(const TwoChain& c);
Json to_json(const CayleyBall& ball, const OneCycle& gamma, const FillingResult& r);
Json to_json(const FATable& t, const Presentation& p);
Json to_json(const SurfaceDiagram& s);
Json to_json(const SurfaceMetrics& m);
Json to_json(const VerificationReport& r);
Json to_json(const TransferConstants& k, const Presentation& kernel);
Json to_json(const PushdownTrace& t, const HomPresentation& h);
Json to_json(const BoundReport& r);
Json to_json(const std::vector<TCycle>& cycles);
Json to_json(const ARPairReport& r, const Presentation& p);
Json to_json(const HyperbolicARPair& h);
Json to_json(const DegreeReport& d);
Json to_json(const RelationCheck& r);
Json to_json(const EquivalenceReport& r, const Presentation& a, const Presentation& b);

/// Reads a diagram written by to_json(SurfaceDiagram). Corners and vertex
/// data are recomputed from the gluing when absent. Throws InputError on
/// malformed documents.
SurfaceDiagram diagram_from_json(const Json& j);

/// 1-skeleton of the diagram; boundary slots drawn bold red.
std::string to_dot(const SurfaceDiagram& s, const Presentation* p = nullptr);

/// Two whitespace-separated columns, one row per n >= 1.
std::string two_column_table(const std::vector<Coeff>& values, const std::string& header);
std::string two_column_table(const std::vector<std::string>& values, const std::string& header);

/// Writes through a temporary file in the same directory and renames it.
void atomic_write(const std::string& path, const std::string& content);

std::string dump(const Json& j);  // two-space indent, trailing newline

}  // namespace homfill

#endif  // HOMFILL_IO_HPP_
