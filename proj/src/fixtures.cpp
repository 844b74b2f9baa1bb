#include "semaxis/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

namespace semaxis {

namespace {

std::string fmt_real(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::vector<Index> pick(Index n, Index count, std::mt19937_64& rng) {
  std::vector<Index> idx(n);
  std::iota(idx.begin(), idx.end(), Index{0});
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(count);
  return idx;
}

}  // namespace

StudentFixture make_student_fixture(Index students, Index planted_per_group, std::uint64_t seed) {
  if (students < 2 * planted_per_group) throw std::invalid_argument("too few students for the planted groups");
  StudentFixture fx;
  // Interleaved like a real timetable so category membership is not positional.
  const std::vector<std::string> subjects = {"chinese", "math",    "english", "physics", "chemistry",
                                             "biology", "history", "politics", "geography"};
  fx.science_subjects = {"math", "physics", "chemistry", "biology"};
  fx.humanities_subjects = {"chinese", "english", "history", "politics", "geography"};
  auto is_science = [&](const std::string& s) {
    return std::find(fx.science_subjects.begin(), fx.science_subjects.end(), s) != fx.science_subjects.end();
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> ability(0.0, 8.0);
  std::normal_distribution<double> noise(0.0, 7.0);
  const auto planted = pick(students, 2 * planted_per_group, rng);
  std::vector<int> bias(students, 0);  // +1 science, -1 humanities
  for (Index k = 0; k < planted_per_group; ++k) bias[planted[k]] = 1;
  for (Index k = planted_per_group; k < 2 * planted_per_group; ++k) bias[planted[k]] = -1;

  std::ostringstream csv;
  csv << "id";
  for (const auto& s : subjects) csv << ',' << s;
  csv << '\n';
  for (Index i = 0; i < students; ++i) {
    const std::string id = "s" + std::to_string(14000 + i);
    if (bias[i] > 0) fx.science_biased.push_back(id);
    if (bias[i] < 0) fx.humanities_biased.push_back(id);
    const double g = ability(rng);
    csv << id;
    for (const auto& s : subjects) {
      const double lean = bias[i] == 0 ? 0.0 : (is_science(s) ? 16.0 : -16.0) * bias[i];
      const double score = std::clamp(72.0 + g + lean + noise(rng), 0.0, 100.0);
      csv << ',' << fmt_real(score, 1);
    }
    csv << '\n';
  }
  fx.csv = csv.str();
  fx.truth = {{"dataset", "students"},
              {"n", students},
              {"d", subjects.size()},
              {"seed", seed},
              {"attributes", subjects},
              {"science_subjects", fx.science_subjects},
              {"humanities_subjects", fx.humanities_subjects},
              {"science_biased", fx.science_biased},
              {"humanities_biased", fx.humanities_biased}};
  return fx;
}

InstitutionFixture make_institution_fixture(Index institutions, std::uint64_t seed) {
  constexpr Index kSpecialists = 15;
  constexpr Index kAllRound = 5;
  if (institutions < kSpecialists + kAllRound + 10) throw std::invalid_argument("too few institutions");
  InstitutionFixture fx;
  fx.ai_areas = {"ai", "vision", "mlmining", "nlp", "ir"};
  const std::vector<std::string> systems = {"arch", "comm", "sec", "mod",     "da",   "bed",
                                            "hpc",  "mobile", "metrics", "ops", "plan", "soft"};
  const std::vector<std::string> theory = {"act", "crypt", "log"};
  const std::vector<std::string> inter = {"bio", "graph", "ecom", "chi", "robotics", "visualization"};
  for (const std::vector<std::string>* group : {&std::as_const(fx.ai_areas), &systems, &theory, &inter}) {
    fx.areas.insert(fx.areas.end(), group->begin(), group->end());
  }
  fx.single_area = "visualization";
  for (int start = 1970; start < 2020; start += 5) {
    fx.periods.push_back(std::to_string(start) + "-" + std::to_string(start + 4));
  }
  const Index n = institutions;
  const Index d = static_cast<Index>(fx.areas.size());
  const Index t_count = static_cast<Index>(fx.periods.size());
  const Index vis = d - 1;
  auto is_ai = [&](Index k) { return k < static_cast<Index>(fx.ai_areas.size()); };

  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> strength(0.0, 1.0);
  std::lognormal_distribution<double> affinity(0.0, 0.5);
  std::normal_distribution<double> jitter(0.0, 0.05);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::string> ids;
  for (Index i = 0; i < n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "inst%03lld", static_cast<long long>(i + 1));
    ids.emplace_back(buf);
  }
  auto special = pick(n, kSpecialists + kAllRound + 1, rng);
  const Index rising = special.back();
  std::vector<int> role(n, 0);  // 1 specialist, 2 all-round, 3 rising
  for (Index k = 0; k < kSpecialists; ++k) role[special[k]] = 1;
  for (Index k = kSpecialists; k < kSpecialists + kAllRound; ++k) role[special[k]] = 2;
  role[rising] = 3;

  Matrix base(n, d);
  for (Index i = 0; i < n; ++i) {
    const double s = strength(rng);
    for (Index k = 0; k < d; ++k) base(i, k) = s * affinity(rng);
  }
  const double top_overall = base.maxCoeff();
  for (Index i = 0; i < n; ++i) {
    if (role[i] == 1) {
      for (Index k = 0; k < d; ++k) base(i, k) = 0.02 * unit(rng);
    } else if (role[i] == 2) {
      for (Index k = 0; k < d; ++k) base(i, k) = top_overall * (0.35 + 0.25 * unit(rng));
    } else if (role[i] == 3) {
      for (Index k = 0; k < d; ++k) base(i, k) = 1.0 + 0.2 * unit(rng);
    }
  }
  const double top_single = base.col(vis).maxCoeff();
  for (Index i = 0; i < n; ++i) {
    if (role[i] == 1 || role[i] == 2) base(i, vis) = top_single * (0.7 + 0.5 * unit(rng));
  }

  std::vector<Matrix> slices(t_count, Matrix(n, d));
  for (Index t = 0; t < t_count; ++t) {
    const double growth = std::pow(1.25, static_cast<double>(t));
    for (Index i = 0; i < n; ++i) {
      for (Index k = 0; k < d; ++k) slices[t](i, k) = std::max(0.0, base(i, k) * growth * (1.0 + jitter(rng)));
    }
    // The rising entity goes from negligible to leading in every AI area.
    for (Index k = 0; k < d; ++k) {
      if (!is_ai(k)) continue;
      double field_top = 0.0;
      for (Index i = 0; i < n; ++i) {
        if (i != rising) field_top = std::max(field_top, slices[t](i, k));
      }
      const double share = 0.02 * std::pow(1.6, static_cast<double>(t));
      slices[t](rising, k) = field_top * share;
    }
  }

  std::ostringstream csv;
  csv << "id,period";
  for (const auto& a : fx.areas) csv << ',' << a;
  csv << '\n';
  for (Index t = 0; t < t_count; ++t) {
    for (Index i = 0; i < n; ++i) {
      csv << ids[i] << ',' << fx.periods[t];
      for (Index k = 0; k < d; ++k) csv << ',' << fmt_real(slices[t](i, k), 4);
      csv << '\n';
    }
  }
  fx.csv = csv.str();
  fx.rising_id = ids[rising];
  for (Index i = 0; i < n; ++i) {
    if (role[i] == 1) fx.specialists.push_back(ids[i]);
    if (role[i] == 2) fx.all_round.push_back(ids[i]);
  }
  fx.truth = {{"dataset", "institutions"},
              {"n", n},
              {"d", d},
              {"seed", seed},
              {"attributes", fx.areas},
              {"ai_areas", fx.ai_areas},
              {"periods", fx.periods},
              {"single_area", fx.single_area},
              {"rising_entity", fx.rising_id},
              {"specialists", fx.specialists},
              {"all_round", fx.all_round}};
  return fx;
}

}  // namespace semaxis
