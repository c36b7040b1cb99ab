#pragma once

#include <string>

#include "gcover/eds_general.hpp"
#include "gcover/eds_tree.hpp"
#include "gcover/instance.hpp"
#include "gcover/multicut_tree.hpp"
#include "gcover/report.hpp"

namespace gcover {

// Certificates are JSON documents with a "problem" tag. Rationals are
// strings "p/q", keys are sorted, so equal inputs give equal bytes.
std::string certificate_json(const EdsInstance& inst, const EdsTreeResult& r);
std::string certificate_json(const MulticutInstance& inst,
                             const MulticutResult& r);
std::string certificate_json(const EdsInstance& inst,
                             const EdsGeneralResult& r);

// Parses a certificate and runs the verifier matching the instance.
// Throws ParseError on malformed JSON or a problem mismatch.
VerificationReport verify_certificate(const Instance& inst,
                                      const std::string& certificate);

}  // namespace gcover
