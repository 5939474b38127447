#pragma once

// JSON forms of the library objects. Keys are emitted in sorted order and
// numbers in shortest round-trip form, so equal objects give equal bytes.

#include "cmvf/conley.hpp"

#include "json.hpp"

#include <string>

namespace cmvf {

using Json = nlohmann::json;

/// "num/den" string over Q, integer over GF(p).
Json scalar_json(const Scalar& value);
Scalar scalar_from_json(Field field, const Json& value);

/// {"field", "cells": [{"id", "label", "dim"}], "kappa": [[x, y, scalar]]}
Json complex_json(const LefschetzComplex& complex);
/// Cell ids in the input are only used to resolve kappa; the result is
/// renumbered by (dim, label). Throws InvalidFormat.
LefschetzComplex complex_from_json(const Json& value);

/// {"multivectors": [[ids]], "tags": ["critical" | "regular"]}
Json mvf_json(const MultivectorField& field);
/// Throws InvalidFormat, or the validate_mvf errors.
MultivectorField mvf_from_json(const LefschetzComplex& complex, const Json& value);

/// [[p, q]] for every p < q
Json poset_json(const MorseDecomposition& morse);
/// {"morse_sets": [[ids]], "poset", "conley_indices": [[b0, b1, ...]]}
Json morse_json(const MorseDecomposition& morse);

/// {"poset", "generators": [{"morse_index", "dim", "rep_cell"}], "delta": [[i, j, scalar]]}
Json connection_matrix_json(const ConnectionMatrix& cm);
Json verification_json(const VerificationReport& report);

/// Two-space indent and a trailing newline.
std::string dump(const Json& value);

} // namespace cmvf
