"""Generates one reference page per public `tatesub` module and the nav."""

from pathlib import Path

import mkdocs_gen_files

PACKAGE = Path("src", "tatesub")
SYMBOL = '<code class="doc-symbol doc-symbol-nav doc-symbol-module"></code>'

nav = mkdocs_gen_files.Nav()

for path in sorted(PACKAGE.rglob("*.py")):
    parts = path.relative_to("src").with_suffix("").parts
    if parts[-1] == "__init__":
        parts = parts[:-1]
        doc_path = Path(*parts, "index.md")
    elif parts[-1].startswith("_"):
        continue
    else:
        doc_path = Path(*parts).with_suffix(".md")
    nav[tuple(f"{SYMBOL} {part}" for part in parts)] = doc_path.as_posix()
    with mkdocs_gen_files.open(Path("reference", doc_path), "w") as page:
        page.write(f"::: {'.'.join(parts)}")
    mkdocs_gen_files.set_edit_path(Path("reference", doc_path), ".." / path)

with mkdocs_gen_files.open("reference/SUMMARY.md", "w") as nav_file:
    nav_file.writelines(nav.build_literate_nav())
