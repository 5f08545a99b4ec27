#pragma once

#include <string>
#include <vector>

#include "reson/types.hpp"

namespace reson {

// 12 significant digits, '.' decimal separator; byte-stable across runs
std::string format_real(Real v);

struct Cell {
    enum class Kind { Text, Number, Integer, Boolean };
    Kind kind;
    std::string token;  // already formatted

    static Cell text(std::string s);
    static Cell num(Real v);
    static Cell integer(long v);
    static Cell boolean(bool v);
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> cells);
};

std::string to_csv(const Table& t);
// array of objects mirroring the CSV field names
std::string to_json(const Table& t);

}  // namespace reson
