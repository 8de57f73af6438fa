#pragma once

#include <string>
#include <vector>

#include "skaff/diagram.hpp"
#include "skaff/translation.hpp"

namespace skaff {

std::vector<std::string> catalog_scheme_names();
std::vector<std::string> catalog_diagram_names();

/// Built-in scheme by bare name: z4-cycle, h22, z5-paley, z6-cycle.
TranslationScheme catalog_scheme(const std::string& name);

/// Built-in diagram by bare name, optionally relabeled.  Shapes taking
/// labels: star and triangle (3), path2 and parallel2 (2), loop0 (1),
/// fig1 (7, one per edge), ex21-lhs and ex21-rhs (2), ex23-lhs and
/// ex23-rhs (3).  An empty label list selects each shape's defaults.
Diagram catalog_diagram(const std::string& name, const std::vector<int>& labels = {});

/// True when a CLI reference selects the catalog instead of a file.
bool is_builtin_ref(const std::string& ref);

/// Parse "builtin:name" or "builtin:name:l1,l2,..." forms.
Diagram builtin_diagram(const std::string& ref);
TranslationScheme builtin_scheme(const std::string& ref);

} // namespace skaff
