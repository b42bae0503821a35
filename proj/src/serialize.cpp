#include "specq/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace specq {

nlohmann::json to_json(const QPoint& p) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const Vec& a : p.atoms()) atoms.push_back(a);
  return atoms;
}

QPoint qpoint_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("qpoint_from_json: need an array of atoms");
  std::vector<Vec> atoms;
  for (const auto& a : j) atoms.push_back(a.get<Vec>());
  return QPoint(std::move(atoms));
}

nlohmann::json to_json(const SpecPoint& p) {
  return {{"sign", p.sign()}, {"atoms", to_json(p.base())}};
}

SpecPoint specpoint_from_json(const nlohmann::json& j) {
  const int sign = j.at("sign").get<int>();
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("specpoint_from_json: sign must be +-1");
  return SpecPoint(qpoint_from_json(j.at("atoms")), sign);
}

nlohmann::json to_json(const GridField& u) {
  const GridDomain& d = u.domain;
  nlohmann::json j;
  j["domain"] = {{"shape", d.shape() == DomainShape::Disk ? "disk" : "square"},
                 {"m", d.m()},
                 {"h", d.h()},
                 {"extent", d.extent()}};
  j["q"] = u.q;
  j["n"] = u.n;
  nlohmann::json vals = nlohmann::json::array();
  for (const SpecPoint& p : u.values) vals.push_back(to_json(p));
  j["values"] = std::move(vals);
  j["fixed"] = u.fixed;
  return j;
}

GridField field_from_json(const nlohmann::json& j) {
  const auto& dj = j.at("domain");
  const std::string shape = dj.at("shape").get<std::string>();
  const double h = dj.at("h").get<double>();
  const double extent = dj.at("extent").get<double>();
  GridDomain d = shape == "disk"
                     ? GridDomain::disk(h, extent)
                     : GridDomain::square(dj.at("m").get<int>(), h, extent);
  GridField u;
  u.q = j.at("q").get<int>();
  u.n = j.at("n").get<int>();
  const auto& vals = j.at("values");
  if (static_cast<int>(vals.size()) != d.size())
    throw std::invalid_argument("field_from_json: value count does not match "
                                "the lattice");
  for (const auto& v : vals) {
    SpecPoint p = specpoint_from_json(v);
    if (p.q() != u.q || p.n() != u.n)
      throw std::invalid_argument("field_from_json: inhomogeneous samples");
    u.values.push_back(std::move(p));
  }
  u.fixed = j.at("fixed").get<std::vector<std::uint8_t>>();
  if (static_cast<int>(u.fixed.size()) != d.size())
    throw std::invalid_argument("field_from_json: bad fixed mask");
  u.domain = std::move(d);
  return u;
}

void save_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_json: cannot open " + path);
  out << j.dump(2) << "\n";
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_json: cannot open " + path);
  return nlohmann::json::parse(in);
}

void save_csv(const std::string& path, const std::string& header,
              const std::vector<Vec>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_csv: cannot open " + path);
  out << header << "\n";
  out.precision(17);
  for (const Vec& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << row[i];
    out << "\n";
  }
}

}  // namespace specq
