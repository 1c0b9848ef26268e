import os
from typing import Dict, List

from dotenv import load_dotenv
from setuptools import find_packages, setup

# Load the environment variables
load_dotenv()


class Author:
    def __init__(self, name: str | None, email: str | None) -> None:
        self.name = name
        self.email = email


class ProjectSetup:
    def __init__(self) -> None:
        self.HYPHEN_E_DOT = "-e ."
        self.file_path = "requirements.txt"
        self.project_name = "Theory-Kernel-Toolkit"
        self.version = "0.1.0"
        self.author = Author(os.getenv("USER_NAME"), os.getenv("USER_EMAIL"))

    def get_long_description(self) -> str:
        with open("./README.md", "r", encoding="utf-8") as f:
            return f.read()

    def get_requirements(self) -> Dict[str, List[str]]:
        """
        Reads requirements.txt, grouped by its `# <group>` headers.

        Returns:
            Dict[str, List[str]]: "core" holds the lines before the first header;
            every other key is an optional extra (ui, test).
        """
        groups: Dict[str, List[str]] = {"core": []}
        current = "core"
        with open(self.file_path, encoding="utf-8") as file:
            for line in (raw.strip() for raw in file):
                if not line or line.lstrip("# ") == self.HYPHEN_E_DOT:
                    continue
                if line.startswith("#"):
                    current = line.lstrip("# ").lower()
                    groups.setdefault(current, [])
                    continue
                groups[current].append(line)
        return groups

    def run(self) -> None:
        requirements = self.get_requirements()
        repo_url = f"{os.getenv('GITHUB_URL')}{self.author.name}/{self.project_name}"
        setup(
            name=self.project_name,
            version=self.version,
            author=self.author.name,
            author_email=self.author.email,
            description="A kernel for partial Horn theories: derivations, rewriting, confluence and Morita checks",
            long_description=self.get_long_description(),
            long_description_content_type="text/markdown",
            url=repo_url,
            project_urls={"Bug Tracker": f"{repo_url}/issues"},
            python_requires=">=3.10",
            packages=find_packages(exclude=["tests", "examples", "examples.*"]),
            install_requires=requirements.pop("core"),
            extras_require=requirements,
            package_data={"Stdlib": ["theories/*.th"], "Syntax": ["grammar.lark"]},
            entry_points={"console_scripts": ["ttk = Cli.main:main"]},
        )


if __name__ == "__main__":
    ProjectSetup().run()
