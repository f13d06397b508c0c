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

#include "factorsim/record_io.h"

#include <stdexcept>

namespace fsim {

RecordFormat parse_record_format(const std::string &name) {
    if (name == "01") {
        return RecordFormat::Text01;
    }
    if (name == "bin") {
        return RecordFormat::Binary;
    }
    if (name == "csv") {
        return RecordFormat::WeightedCsv;
    }
    throw std::invalid_argument("unknown record format '" + name + "' (expected 01, bin or csv)");
}

RecordWriter::RecordWriter(std::ostream &out, RecordFormat format, bool keep_rejected)
    : out_(out), format_(format), keep_rejected_(keep_rejected) {
}

void RecordWriter::write(uint64_t shot, const ShotRecord &record) {
    if (!record.accepted && !keep_rejected_) {
        return;
    }
    line_.clear();
    for (const auto *bits : {&record.measurements, &record.detectors, &record.observables}) {
        for (uint8_t b : *bits) {
            line_.push_back(b ? '1' : '0');
        }
    }
    switch (format_) {
        case RecordFormat::Text01:
            out_ << line_;
            if (keep_rejected_) {
                out_ << (record.accepted ? " 1" : " 0");
            }
            out_ << '\n';
            break;
        case RecordFormat::Binary: {
            if (keep_rejected_) {
                line_.push_back(record.accepted ? '1' : '0');
            }
            uint8_t byte = 0;
            for (size_t i = 0; i < line_.size(); i++) {
                if (line_[i] == '1') {
                    byte |= static_cast<uint8_t>(1u << (i & 7));
                }
                if ((i & 7) == 7) {
                    out_.put(static_cast<char>(byte));
                    byte = 0;
                }
            }
            if (line_.size() & 7) {
                out_.put(static_cast<char>(byte));
            }
            break;
        }
        case RecordFormat::WeightedCsv:
            if (!header_written_) {
                out_ << (keep_rejected_ ? "shot,weight,accepted,bits\n" : "shot,weight,bits\n");
                header_written_ = true;
            }
            out_ << shot << ',';
            out_.precision(17);
            out_ << record.weight << ',';
            if (keep_rejected_) {
                out_ << (record.accepted ? 1 : 0) << ',';
            }
            out_ << line_ << '\n';
            break;
    }
}

}  // namespace fsim
