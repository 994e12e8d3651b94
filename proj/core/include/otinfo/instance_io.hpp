#pragma once

#include <optional>
#include <string>

#include "otinfo/types.hpp"

namespace otinfo {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Instance document: a JSON object with keys `q`, `p` (arrays of
/// unnormalized non-negative weights), `cost` (array of arrays), and an
/// optional `reference` array. Missing keys stay unset.
struct ParsedInstance {
    std::optional<Distribution> q;
    std::optional<Distribution> p;
    std::optional<Distribution> reference;
    std::optional<CostMatrix> cost;
};

ParsedInstance parse_instance(const std::string& text);
ParsedInstance load_instance(const std::string& path);

}  // namespace otinfo
