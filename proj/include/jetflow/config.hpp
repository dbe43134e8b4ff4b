#pragma once
// run configuration; filled in alongside the CLI
