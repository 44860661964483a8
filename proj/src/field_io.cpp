#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "homog/circle_field.hpp"
#include "homog/error.hpp"

namespace homog {

void write_csv(const CircleField& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "theta,value\n" << std::setprecision(17);
  for (std::size_t j = 0; j < f.size(); ++j) out << f.theta(j) << ',' << f[j] << '\n';
}

CircleField read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(in, line);
  if (line != "theta,value") throw ConfigError(path, "expected header 'theta,value'");
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError(path, "malformed row '" + line + "'");
    values.push_back(std::stod(line.substr(comma + 1)));
  }
  return CircleField::from_samples(std::move(values));
}

std::string spectrum_json(const CircleField& f) {
  nlohmann::json rows = nlohmann::json::array();
  const long nh = static_cast<long>(f.size() / 2);
  for (long k = -nh; k < nh; ++k) {
    const cplx c = (k == -nh) ? f.half_spectrum()[static_cast<std::size_t>(nh)] : f.coeff(k);
    rows.push_back({{"k", k}, {"re", c.real()}, {"im", c.imag()}});
  }
  nlohmann::json doc = {{"n", f.size()}, {"convention", "f_k = (1/2pi) int f exp(+ik theta)"},
                        {"coefficients", rows}};
  return doc.dump(2);
}

}  // namespace homog
