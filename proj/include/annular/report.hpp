#pragma once

#include "annular/hypothesis.hpp"
#include "annular/solver.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace annular {

/// Every number in reports goes through this: 9 significant digits.
std::string format_number(double x);

/// Ordered key=value lines.
class KeyValues {
public:
    void add(const std::string& key, double value);
    void add(const std::string& key, int value);
    void add(const std::string& key, bool value);
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, const char* value) { add(key, std::string(value)); }

    const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
    void write(std::ostream& out) const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

void write_human(std::ostream& out, const HypothesisReport& report);
KeyValues machine_block(const HypothesisReport& report);

void write_human(std::ostream& out, const SolveResult& result);
KeyValues machine_block(const SolveResult& result);

}  // namespace annular
