// JSON descriptor ingestion: smooth functions, surfaces, spacetimes, test
// functions and configurations come in as {"family": ..., "params": {...}}
// or {"samples": [[x, y], ...]} documents.

#ifndef CHIRAL_DESCRIPTORS_HPP
#define CHIRAL_DESCRIPTORS_HPP

#include "chiral/fields.hpp"

namespace chiral {

/// Families: constant, identity, affine, sine, sinePerturbedIdentity,
/// gaussian, polynomial, bump; or {"samples": ...} for a cubic spline.
SmoothFn smooth_from_json(const nlohmann::json& j);

/// Families: bump {center, halfwidth, amplitude}, gaussianPoly {center,
/// sigma, poly}; or samples with an explicit "support".
TestFunction test_function_from_json(const nlohmann::json& j);

/// Surface graphs: identity, affine {a, b}, sinePerturbedIdentity
/// {amplitude, frequency}; or samples.
CauchySurface surface_from_json(const nlohmann::json& j, const SpacetimePtr& host);

/// {"kind": "minkowski" | "cylinder" | "subset", parent/lower/upper...}.
SpacetimePtr spacetime_from_json(const nlohmann::json& j);

ChiralConfiguration configuration_from_json(const nlohmann::json& j, bool periodic);

Diffeo diffeo_from_json(const nlohmann::json& j);

}  // namespace chiral

#endif
