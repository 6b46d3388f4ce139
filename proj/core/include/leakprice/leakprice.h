// Copyright 2026 The leakprice Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEAKPRICE_LEAKPRICE_H_
#define LEAKPRICE_LEAKPRICE_H_

#include "leakprice/discretize.h"
#include "leakprice/error.h"
#include "leakprice/estimation.h"
#include "leakprice/infotheory.h"
#include "leakprice/joint_table.h"
#include "leakprice/pricing.h"
#include "leakprice/random.h"
#include "leakprice/records.h"
#include "leakprice/report.h"
#include "leakprice/schema.h"

#endif  // LEAKPRICE_LEAKPRICE_H_
