#pragma once

#include <string>
#include <vector>

#include "adjoints/adjoint.hpp"
#include "adjoints/divisor.hpp"

namespace adjoints {

// Parsed problem file: the hypersurface, twist data, divisors and options.
// All exact values travel as strings in the expression grammar, never as
// floating point.
struct ProblemFile {
    std::vector<std::string> variables;
    MultiPoly F;
    long m = 1;
    long n = 0;
    std::vector<DivisorData> divisors;
    AdjointOptions options;
};

ProblemFile load_problem(const std::string& path);
ProblemFile parse_problem_text(const std::string& text, const std::string& base_dir = "");

std::vector<DivisorData> load_divisor_file(const std::string& path);
std::vector<DivisorData> parse_divisor_file_text(const std::string& text);

// Canonical serialization; parse(print(x)) == x.
std::string divisor_to_json_text(const DivisorData& d);
std::string divisors_to_json_text(const std::vector<DivisorData>& ds);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace adjoints
