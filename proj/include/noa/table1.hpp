#pragma once

// The published 64-run, 5-factor, 8-level nested design, reproduced exactly
// as printed. Rows are read down each printed column, left printed column
// first; each five-digit entry is one run.

#include <array>
#include <string_view>

#include "noa/design.hpp"

namespace noa {

inline constexpr std::array<std::string_view, 64> table1_rows = {
    "11111", "13333", "15555", "17777", "00357", "02175", "04713", "06531",  //
    "01573", "03751", "05137", "07315", "10735", "12517", "14371", "16153",  //
    "21364", "23146", "25720", "27502", "30122", "32300", "34566", "36744",  //
    "31706", "33524", "35342", "37160", "20540", "22762", "24104", "26326",  //
    "51427", "53605", "55063", "57241", "40661", "42443", "44225", "46007",  //
    "41045", "43267", "45401", "47623", "50203", "52021", "54647", "56465",  //
    "61652", "63470", "65216", "67034", "70414", "72636", "74050", "76272",  //
    "71230", "73012", "75674", "77456", "60076", "62254", "64432", "66610",
};

inline Design table1_design() {
  std::vector<Level> entries;
  entries.reserve(64 * 5);
  for (auto row : table1_rows)
    for (char c : row) entries.push_back(static_cast<Level>(c - '0'));
  return Design(64, 5, 8, std::move(entries));
}

}  // namespace noa
