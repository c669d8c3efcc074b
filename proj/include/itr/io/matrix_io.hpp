#pragma once

#include <string>
#include <vector>

#include "itr/channel.hpp"
#include "itr/stats.hpp"

namespace itr::io {

/// Row-stochastic matrix from CSV (one row per line, comma separated).
/// Validation failures name the offending row.
ChannelMatrix read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const ChannelMatrix& m);

/// Confusion CSV: first line holds the class labels, then M rows of integer
/// counts. Window/method/subject metadata travel beside the file (flags or
/// the JSON container).
ConfusionRecord read_confusion_csv(const std::string& path);
void write_confusion_csv(const std::string& path, const ConfusionRecord& record);

/// JSON container bundling the counts with subject, window, gaze and method.
ConfusionRecord read_confusion_json(const std::string& path);
void write_confusion_json(const std::string& path, const ConfusionRecord& record,
                          double gaze_s);

/// Reads either format, keyed on the file extension (.json vs anything else).
ConfusionRecord read_confusion_any(const std::string& path);

/// Locale-independent fixed-precision formatting (C locale digits).
std::string format_double(double v, int precision);

}  // namespace itr::io
