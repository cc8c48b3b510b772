#pragma once

#include <cstdint>
#include <string>

// Runs one named identity suite, printing per-identity pass counts to stdout.
// Returns the number of failed checks; negative for an unknown suite name.
int run_identity_suite(const std::string& name, std::uint32_t seed, int trials);
