#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cotsum/montecarlo.hpp"

namespace cotsum {

// JSON experiment description; unknown fields are rejected by name.
// {
//   "statistic": {"family": "sum_ak", "p": 2.0, "g": "frac_part", "ru_k": 20},
//   "N_ladder": [100, 1000, 10000],
//   "M": 5000,
//   "density": {"kind": "uniform"}
//             | {"kind": "gauss_measure"}
//             | {"kind": "linear_lipschitz", "L": 0.5}
//             | {"kind": "table", "points": [[0.0, 0.5], [0.5, 1.5], [1.0, 0.5]]},
//   "seed": 12345,
//   "worker_count": 8
// }
ExperimentConfig parse_experiment_config(const std::string& json_text);
std::string experiment_config_to_json(const ExperimentConfig& config);

extern const char* const kResultCsvHeader;  // statistic,N,M,seed,ks,q01,...,elapsed_s

std::string result_row_to_csv(const ResultRow& row);
void write_result_csv(std::ostream& os, const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_result_csv(std::istream& is);

// JSON mirror of the CSV; numbers carried as strings so consumers cannot
// re-round them
std::string result_rows_to_json(const std::vector<ResultRow>& rows);

std::string constants_table_to_json();
std::string constants_table_to_csv();

} // namespace cotsum
