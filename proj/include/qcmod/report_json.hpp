#pragma once

#include <string>

#include <json.hpp>

#include "qcmod/curves.hpp"
#include "qcmod/grid.hpp"
#include "qcmod/modulus.hpp"
#include "qcmod/verify.hpp"

namespace qcmod {

using json = nlohmann::json;

json family_to_json(const CurveFamily& fam);
CurveFamily family_from_json(const json& j);
CurveFamily load_family(const std::string& path);
void save_family(const CurveFamily& fam, const std::string& path);

json grid_to_json(const Grid& g);
Grid grid_from_json(const json& j);
json density_to_json(const GridDensity& d);
GridDensity density_from_json(const json& j);
GridDensity load_density(const std::string& path);

json estimate_to_json(const ModulusEstimate& e);
json report_to_json(const VerificationReport& r);
json weakflat_to_json(const WeakFlatnessResult& r);
json recenter_to_json(const RecenterResult& r);
json minorization_to_json(const MinorizationCheck& m);
json cluster_to_json(const ClusterProbe& p);

}  // namespace qcmod
