// SPDX-License-Identifier: Apache-2.0
//
// owcsim - indoor optical wireless channel simulation and resource allocation
// Copyright (C) 2026 The owcsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef OWC_ERRORS_HPP
#define OWC_ERRORS_HPP

#include <stdexcept>
#include <string>

// Precondition violations on library calls throw std::invalid_argument.
// The types below mark failures that the command-line front end reports
// under their own category.
namespace owc
{
    // Malformed or inconsistent configuration / scenario file.
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // File could not be read or written, or a binary file is corrupt.
    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // More users than (access point, wavelength) slots.
    class InfeasibleError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // A lookup key (location, AP, element) is not present.
    class LookupError : public std::out_of_range
    {
    public:
        using std::out_of_range::out_of_range;
    };

} // namespace owc

#endif
