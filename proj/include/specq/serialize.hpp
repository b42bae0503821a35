#ifndef SPECQ_SERIALIZE_HPP
#define SPECQ_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "specq/fields.hpp"

namespace specq {

nlohmann::json to_json(const QPoint& p);
QPoint qpoint_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SpecPoint& p);
SpecPoint specpoint_from_json(const nlohmann::json& j);

// Field files carry the domain parameters, the samples on every lattice node
// and the fixed (Dirichlet) mask.
nlohmann::json to_json(const GridField& u);
GridField field_from_json(const nlohmann::json& j);

void save_json(const std::string& path, const nlohmann::json& j);
nlohmann::json load_json(const std::string& path);

// CSV with a header row; each row formatted at full double precision.
void save_csv(const std::string& path, const std::string& header,
              const std::vector<Vec>& rows);

}  // namespace specq

#endif
