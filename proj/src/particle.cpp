// SPDX-License-Identifier: Apache-2.0
#include "swpm/particle.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace swpm {

namespace {

void validate(const WeightedParticle& p) {
  if (!(std::isfinite(p.v.x) && std::isfinite(p.v.y) && std::isfinite(p.v.z))) {
    throw std::invalid_argument("particle velocity must be finite");
  }
  if (!std::isfinite(p.w) || p.w < 0.0) {
    throw std::invalid_argument("particle weight must be finite and nonnegative");
  }
}

double parse_field(const std::string& field) {
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(field, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("malformed numeric field '" + field + "'");
  }
  while (pos < field.size() && (field[pos] == ' ' || field[pos] == '\t')) ++pos;
  if (pos != field.size()) {
    throw std::runtime_error("malformed numeric field '" + field + "'");
  }
  return value;
}

}  // namespace

Ensemble::Ensemble(const std::vector<WeightedParticle>& particles) {
  particles_.reserve(particles.size());
  for (const auto& p : particles) push_back(p);
}

void Ensemble::push_back(const WeightedParticle& p) {
  validate(p);
  if (p.w == 0.0) return;
  particles_.push_back(p);
}

void Ensemble::append(const Ensemble& other) {
  particles_.insert(particles_.end(), other.particles_.begin(), other.particles_.end());
}

Ensemble parse_particle_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty particle file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "vx,vy,vz,w") {
    throw std::runtime_error("particle file must start with header 'vx,vy,vz,w'");
  }

  Ensemble ensemble;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::array<std::string, 4> fields;
    std::size_t start = 0;
    int nfields = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        if (nfields >= 4) throw std::runtime_error("too many fields at line " + std::to_string(lineno));
        fields[nfields++] = line.substr(start, i - start);
        start = i + 1;
      }
    }
    if (nfields != 4) throw std::runtime_error("expected 4 fields at line " + std::to_string(lineno));

    WeightedParticle p;
    p.v.x = parse_field(fields[0]);
    p.v.y = parse_field(fields[1]);
    p.v.z = parse_field(fields[2]);
    p.w = parse_field(fields[3]);
    ensemble.push_back(p);
  }
  return ensemble;
}

std::string format_particle_csv(const Ensemble& ensemble) {
  std::string out = "vx,vy,vz,w\n";
  char buf[160];
  for (const auto& p : ensemble) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", p.v.x, p.v.y, p.v.z, p.w);
    out += buf;
  }
  return out;
}

Ensemble read_particle_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open particle file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_particle_csv(buf.str());
}

void write_particle_csv(const Ensemble& ensemble, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write particle file '" + path + "'");
  out << format_particle_csv(ensemble);
}

}  // namespace swpm
