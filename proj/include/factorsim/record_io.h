// Copyright 2026 The factorsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FACTORSIM_RECORD_IO_H
#define FACTORSIM_RECORD_IO_H

#include <cstdint>
#include <ostream>
#include <string>

#include "factorsim/svm.h"

namespace fsim {

enum class RecordFormat {
    /// One line per shot: measurement, detector, then observable bits as '0'/'1'.
    Text01,
    /// The same bits packed little-endian within bytes, each shot padded to a whole byte.
    Binary,
    /// `shot,weight,bits` rows for weighted (importance-sampled) output.
    WeightedCsv,
};

/// Throws std::invalid_argument for an unknown name.
RecordFormat parse_record_format(const std::string &name);

/// Streams shot records. Rejected shots are dropped unless `keep_rejected` is set, in which case
/// every shot carries an accepted flag: a trailing " 1"/" 0" field in text, an extra final bit in
/// binary, and an `accepted` column in CSV.
class RecordWriter {
   public:
    RecordWriter(std::ostream &out, RecordFormat format, bool keep_rejected);
    void write(uint64_t shot, const ShotRecord &record);

   private:
    std::ostream &out_;
    RecordFormat format_;
    bool keep_rejected_;
    bool header_written_ = false;
    std::string line_;
};

}  // namespace fsim

#endif
