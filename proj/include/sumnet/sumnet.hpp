/**************************************************************************
 * sumnet/sumnet.hpp
 *
 * Copyright 2026 The sumnet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include "sumnet/algebra.hpp"
#include "sumnet/capacity.hpp"
#include "sumnet/catalog.hpp"
#include "sumnet/codec.hpp"
#include "sumnet/duality.hpp"
#include "sumnet/error.hpp"
#include "sumnet/io.hpp"
#include "sumnet/isomorphism.hpp"
#include "sumnet/network.hpp"
#include "sumnet/random.hpp"
#include "sumnet/rate.hpp"
#include "sumnet/schemes.hpp"
#include "sumnet/search.hpp"
