//  Copyright 2026 The nabla Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.
#ifndef NABLA_NABLA_HPP_
#define NABLA_NABLA_HPP_

#include "nabla/error.hpp"
#include "nabla/generate.hpp"
#include "nabla/io.hpp"
#include "nabla/modular.hpp"
#include "nabla/morphism.hpp"
#include "nabla/qcat.hpp"
#include "nabla/quantale_lab.hpp"
#include "nabla/rational.hpp"
#include "nabla/step_function.hpp"
#include "nabla/topology.hpp"

#endif  // NABLA_NABLA_HPP_
