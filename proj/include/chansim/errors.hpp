// SPDX-License-Identifier: Apache-2.0
//
// chansim - statistical radio channel simulation for positioning evaluation
// Copyright (C) 2026 The chansim authors
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
#ifndef CHANSIM_ERRORS_HPP
#define CHANSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chansim
{

// Base for all library errors.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Malformed configuration text (bad syntax, unknown key, unparsable value).
class ParseError : public Error
{
public:
    using Error::Error;
};

// A parameter violates a documented invariant. The message names it.
class ValidationError : public Error
{
public:
    using Error::Error;
};

class IoError : public Error
{
public:
    using Error::Error;
};

// A uniform draw of exactly zero reached the log in the delay equation.
class DegenerateDraw : public Error
{
public:
    using Error::Error;
};

class AllZeroPower : public Error
{
public:
    using Error::Error;
};

class MissingLos : public Error
{
public:
    using Error::Error;
};

class MismatchedTargets : public Error
{
public:
    using Error::Error;
};

class InvalidGeometry : public Error
{
public:
    using Error::Error;
};

class NoDetection : public Error
{
public:
    using Error::Error;
};

class EmptySamples : public Error
{
public:
    using Error::Error;
};

} // namespace chansim

#endif
