#pragma once

#include <optional>
#include <string>

#include "skaff/diagram.hpp"
#include "skaff/evaluate.hpp"
#include "skaff/scheme.hpp"
#include "skaff/translation.hpp"

namespace skaff {

/// A scheme read from a file.  Translation files carry the group structure
/// and arrive with spectral data; explicit files are bare relation lists.
struct LoadedScheme {
    Scheme scheme;
    std::optional<TranslationScheme> translation;
};

/// Parse {"kind":"explicit",...} or {"kind":"translation",...}.  Throws
/// InvalidInput with a field diagnostic on malformed text and
/// ValidationFailure when the relations break a scheme axiom.
LoadedScheme scheme_from_json(const std::string& text);

std::string translation_to_json(const TranslationScheme& ts);

/// Parse a diagram description; pair with build_diagram to validate.
DiagramSpec diagram_spec_from_json(const std::string& text);

std::string diagram_to_json(const Diagram& d);

std::string tensor_to_json(const ScaffoldTensor& t);

/// {"p":...,"q":...,"P":...,"Q":...}; q, P, Q are null without spectral
/// data.  P and Q entries are [re,im] pairs; p entries are integers.
std::string params_to_json(const Scheme& s);

} // namespace skaff
