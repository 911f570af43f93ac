// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace swpm {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& operator[](int i) {
    return i == 0 ? x : (i == 1 ? y : z);
  }

  double norm2() const { return x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
};

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double c, const Vec3& a) { return {c * a.x, c * a.y, c * a.z}; }
inline Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

/// One stochastic particle: a velocity (thermal-velocity units) and the
/// nonnegative statistical weight it carries.
struct WeightedParticle {
  Vec3 v;
  double w = 0.0;
};

/// Ordered collection of weighted particles. Particles with weight exactly
/// zero are dropped on insertion; negative or non-finite input is rejected.
class Ensemble {
 public:
  Ensemble() = default;
  explicit Ensemble(const std::vector<WeightedParticle>& particles);

  void push_back(const WeightedParticle& p);
  void append(const Ensemble& other);

  const std::vector<WeightedParticle>& particles() const { return particles_; }
  std::size_t size() const { return particles_.size(); }
  bool empty() const { return particles_.empty(); }

  auto begin() const { return particles_.begin(); }
  auto end() const { return particles_.end(); }

 private:
  std::vector<WeightedParticle> particles_;
};

/// Particle file I/O: text CSV with header "vx,vy,vz,w", one particle per
/// line, full double precision, LF line endings.
Ensemble read_particle_csv(const std::string& path);
void write_particle_csv(const Ensemble& ensemble, const std::string& path);

Ensemble parse_particle_csv(const std::string& text);
std::string format_particle_csv(const Ensemble& ensemble);

}  // namespace swpm
