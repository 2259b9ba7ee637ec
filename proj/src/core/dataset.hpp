#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/censoring.hpp"

namespace iatpcs {

struct DatasetRecord {
    double time;
    int cause;  // 1 or 2
};

// Parses `time,cause` CSV. Lines starting with '#' are comments; a third
// column, if present, is ignored so generated sample files can be fed
// back in. Rows are sorted nondecreasing by time. Parse errors carry the
// 1-based line number.
std::vector<DatasetRecord> parse_dataset(std::string_view text);

// Canonical rendering: `time,cause` header, one row per record, shortest
// round-trip number format. parse followed by write is byte-identical for
// files already in this form.
std::string dataset_to_csv(const std::vector<DatasetRecord>& records);

// Radiation-exposed male mice (Hoel 1972): death times with cause 1 =
// reticulum cell sarcoma, cause 2 = thymic lymphoma. 25 records from the
// progressive sample with n=77, m=25, R_1..R_24=2, R_25=4.
const std::vector<DatasetRecord>& hoel_dataset();
CensoringPlan hoel_plan(double t1, double t2);

// Sample files: the dataset columns plus the effective removals, preceded
// by a `# n=..,m=..,t1=..,t2=..,case=..,r_star=..,t_star=..` header.
std::string sample_to_csv(const IatSample& sample);
IatSample sample_from_csv(std::string_view text);

// Renders a double so that it parses back to the identical value.
std::string format_full(double v);

}  // namespace iatpcs
