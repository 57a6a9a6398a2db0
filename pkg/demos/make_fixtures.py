"""Regenerate the JSON files in ``fixtures/`` from the corpus."""

from pathlib import Path

from floerkit.corpus import write_fixture_files

if __name__ == "__main__":
    target = Path(__file__).resolve().parent.parent / "fixtures"
    for name in write_fixture_files(target):
        print(f"wrote fixtures/{name}")
