#include "chiral/descriptors.hpp"

#include <stdexcept>

namespace chiral {

namespace {

double param(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains("params")) return fallback;
  return j.at("params").value(key, fallback);
}

SmoothFn spline_from_samples(const nlohmann::json& samples) {
  std::vector<double> xs, ys;
  for (const auto& row : samples) {
    xs.push_back(row.at(0).get<double>());
    ys.push_back(row.at(1).get<double>());
  }
  return SmoothFn::cubic_spline(xs, ys);
}

}  // namespace

SmoothFn smooth_from_json(const nlohmann::json& j) {
  if (j.contains("samples")) return spline_from_samples(j.at("samples"));
  const std::string family = j.at("family").get<std::string>();
  if (family == "constant") return SmoothFn::constant(param(j, "value", 0.0));
  if (family == "identity") return SmoothFn::identity();
  if (family == "affine") return SmoothFn::affine(param(j, "a", 1.0), param(j, "b", 0.0));
  if (family == "sine")
    return SmoothFn::sine(param(j, "amplitude", 1.0), param(j, "frequency", 1.0),
                          param(j, "phase", 0.0));
  if (family == "sinePerturbedIdentity")
    return SmoothFn::sine_perturbed_identity(param(j, "amplitude", 0.3),
                                             param(j, "frequency", 1.0));
  if (family == "gaussian")
    return SmoothFn::gaussian(param(j, "center", 0.0), param(j, "sigma", 1.0),
                              param(j, "amplitude", 1.0));
  if (family == "bump")
    return SmoothFn::bump(param(j, "center", 0.0), param(j, "halfwidth", 1.0),
                          param(j, "amplitude", 1.0));
  if (family == "polynomial") {
    std::vector<double> coeffs;
    for (const auto& c : j.at("params").at("coeffs")) coeffs.push_back(c.get<double>());
    return SmoothFn::polynomial(std::move(coeffs));
  }
  throw std::invalid_argument("smooth_from_json: unknown family " + family);
}

TestFunction test_function_from_json(const nlohmann::json& j) {
  std::string name = j.value("name", "f");
  if (j.contains("samples")) {
    if (!j.contains("support"))
      throw std::invalid_argument("test_function_from_json: samples need a support");
    SmoothFn fn = spline_from_samples(j.at("samples"));
    return TestFunction(fn, j.at("support").at(0).get<double>(),
                        j.at("support").at(1).get<double>(), name);
  }
  const std::string family = j.at("family").get<std::string>();
  if (family == "bump")
    return TestFunction::bump(param(j, "center", 0.0), param(j, "halfwidth", 1.0),
                              param(j, "amplitude", 1.0), name);
  if (family == "gaussianPoly") {
    std::vector<double> poly{1.0};
    if (j.contains("params") && j.at("params").contains("poly")) {
      poly.clear();
      for (const auto& c : j.at("params").at("poly")) poly.push_back(c.get<double>());
    }
    return TestFunction::gaussian_poly(param(j, "center", 0.0), param(j, "sigma", 1.0),
                                       std::move(poly), name);
  }
  throw std::invalid_argument("test_function_from_json: unknown family " + family);
}

CauchySurface surface_from_json(const nlohmann::json& j, const SpacetimePtr& host) {
  SmoothFn gamma = smooth_from_json(j);
  if (host && host->periodic()) return CauchySurface::cylinder_surface(host, gamma);
  double lo = -1e18, hi = 1e18;
  if (j.contains("domain")) {
    lo = j.at("domain").at(0).get<double>();
    hi = j.at("domain").at(1).get<double>();
  }
  return CauchySurface(host, gamma, lo, hi);
}

SpacetimePtr spacetime_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "minkowski") return Spacetime::minkowski();
  if (kind == "cylinder") return Spacetime::cylinder();
  if (kind == "subset") {
    SpacetimePtr parent = j.contains("parent") ? spacetime_from_json(j.at("parent"))
                                               : Spacetime::minkowski();
    return Spacetime::subset(parent, smooth_from_json(j.at("lower")),
                             smooth_from_json(j.at("upper")), j.value("xLo", -20.0),
                             j.value("xHi", 20.0), j.value("grid", 1024));
  }
  throw std::invalid_argument("spacetime_from_json: unknown kind " + kind);
}

ChiralConfiguration configuration_from_json(const nlohmann::json& j, bool periodic) {
  return ChiralConfiguration{smooth_from_json(j), periodic};
}

Diffeo diffeo_from_json(const nlohmann::json& j) {
  SmoothFn fn = smooth_from_json(j);
  double lo = j.value("lo", -1e18), hi = j.value("hi", 1e18);
  Diffeo d(fn, lo, hi, j.value("label", std::string("rho")));
  d.require_increasing();
  return d;
}

}  // namespace chiral
