#pragma once

#include "semaxis/types.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace semaxis {

/// Synthetic exam scores with planted subject bias.
struct StudentFixture {
  std::string csv;  // id,<9 subjects>
  IdList science_biased;
  IdList humanities_biased;
  std::vector<std::string> science_subjects;
  std::vector<std::string> humanities_subjects;
  nlohmann::json truth;
};

StudentFixture make_student_fixture(Index students = 500, Index planted_per_group = 60, std::uint64_t seed = 7);

/// Synthetic per-area publication scores for institutions over ten five-year
/// periods, in long format (id,period,<26 areas>).
struct InstitutionFixture {
  std::string csv;
  std::vector<std::string> areas;
  std::vector<std::string> ai_areas;
  std::vector<std::string> periods;
  std::string single_area;  // the area the specialist cluster excels in
  std::string rising_id;    // climbs in every AI area period over period
  IdList specialists;       // strong in single_area only
  IdList all_round;         // strong overall and in single_area
  nlohmann::json truth;
};

InstitutionFixture make_institution_fixture(Index institutions = 495, std::uint64_t seed = 11);

}  // namespace semaxis
