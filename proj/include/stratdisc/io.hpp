#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "closed_form.hpp"
#include "estimator.hpp"
#include "partition.hpp"
#include "sampling.hpp"

namespace stratdisc
{
//! 17 significant digits, the CSV number format.
std::string format_real(double v);

//! Pretty-printed JSON with every float at 17 significant digits.
std::string dump_json(nlohmann::json const& j, int indent = 2);

nlohmann::json to_json(PartitionSpec const& spec);
nlohmann::json to_json(Partition const& p);
nlohmann::json to_json(PointSet const& ps);
nlohmann::json to_json(ClosedFormResult const& r);
nlohmann::json to_json(SweepTable const& t);
nlohmann::json to_json(McEstimate const& e);
nlohmann::json to_json(QuadratureEstimate const& q);
nlohmann::json to_json(ProbeDiagnostic const& p);

//! Header `x1,...,xd`, then one row per point.
void write_points_csv(std::ostream& os, PointSet const& ps);
//! Inverse of write_points_csv; throws DomainError on malformed input.
PointSet read_points_csv(std::istream& is);

//! Header `param,value,baseline,correction`, then one row per grid value.
void write_sweep_csv(std::ostream& os, SweepTable const& t);

}  // namespace stratdisc
