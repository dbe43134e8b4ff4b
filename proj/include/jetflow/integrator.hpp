#pragma once
// iteration step machinery; filled in alongside the step implementation
