/*
   Copyright 2026 The fqbrandt Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FQBRANDT_FQBRANDT_HPP
#define FQBRANDT_FQBRANDT_HPP

#include "field.hpp"
#include "poly.hpp"
#include "quat.hpp"
#include "lattice.hpp"
#include "reduce.hpp"
#include "classset.hpp"
#include "theta.hpp"
#include "brandt.hpp"
#include "picard.hpp"
#include "spectral.hpp"
#include "forms.hpp"
#include "io.hpp"

#endif  // FQBRANDT_FQBRANDT_HPP
