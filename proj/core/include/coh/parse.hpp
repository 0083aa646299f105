#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coh/arrow.hpp"
#include "coh/formula.hpp"

namespace coh {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t offset, std::vector<std::string> expected);

    /// Byte offset of the offending token in the input.
    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Grammar (binary connectives chain left-associatively; -> chains to the
/// right; T is the unit object):
///   formula := imp ; imp := or ("->" imp)? ; or := and ("\/" and)* ;
///   and := atom ("/\" atom)* ; atom := letter | "T" | "(" formula ")"
Formula parse_formula(std::string_view text);

/// Arrow grammar ("." composes, right operand applies first):
///   arrow := comp ; comp := tens ("." comp)? ;
///   tens := prim (("/\"|"\/") prim)? ;
///   prim := name "[" formula ("," formula)* "]" | "(" arrow ")"
ArrowTerm parse_arrow(std::string_view text);

} // namespace coh
