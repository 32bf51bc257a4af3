# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.

import os
import runpy
import subprocess

from setuptools import setup, find_packages

# Version information; update this by hand when making a new release. The
# package version is built from it and the Git history, then written to
# tinprov/version.py.
MAJOR = 1
MINOR = 0
MICRO = 0
PRERELEASE = ""
IS_RELEASED = False

# Templates for version strings.
RELEASED_VERSION = "{major}.{minor}.{micro}{prerelease}"
UNRELEASED_VERSION = "{major}.{minor}.{micro}{prerelease}.dev{dev}"

# Paths to the autogenerated version file and the Git directory.
HERE = os.path.abspath(os.path.dirname(__file__))
VERSION_FILE = os.path.join(HERE, "tinprov", "version.py")
GIT_DIRECTORY = os.path.join(HERE, ".git")

# Template for the autogenerated version file.
VERSION_FILE_TEMPLATE = '''\
# (C) Copyright 2026 tinprov developers
# All rights reserved.
#
# This software is provided without warranty under the terms of the BSD
# license included in LICENSE.txt and may be redistributed only under
# the conditions described in the aforementioned license.

"""
Version information for this tinprov distribution.

This file is autogenerated by the tinprov setup.py script.
"""

#: The full version of the package, including a development suffix
#: for unreleased versions of the package.
version = "{version}"

#: The Git revision from which this release was made.
git_revision = "{git_revision}"

#: Flag whether this is a final release
is_released = {is_released}
'''

# Git executable to use to get revision information.
GIT = "git"


def _git_info(commit="HEAD"):
    """
    Return the number of revisions up to 'commit' and its hash.

    Raises
    ------
    EnvironmentError
        If Git is not available.
    subprocess.CalledProcessError
        If there is no Git repository here.
    """

    def output(args):
        return subprocess.check_output([GIT] + args).decode("utf-8")

    git_count = int(output(["rev-list", "--count", "--first-parent", commit]))
    git_revision = output(["rev-list", "--max-count", "1", commit]).rstrip()

    return git_count, git_revision


def write_version_file(version, git_revision):
    """ Write version information to the version file. """

    with open(VERSION_FILE, "w", encoding="ascii") as version_file:
        version_file.write(
            VERSION_FILE_TEMPLATE.format(
                version=version,
                git_revision=git_revision,
                is_released=IS_RELEASED,
            )
        )


def resolve_version():
    """
    Process version information and write a version file if necessary.

    Returns
    -------
    version : str
        Package version.
    git_revision : str
        The full commit hash for the current Git revision, or "unknown".
    """
    template = RELEASED_VERSION if IS_RELEASED else UNRELEASED_VERSION

    if os.path.isdir(GIT_DIRECTORY):
        git_count, git_revision = _git_info()
        version = template.format(
            major=MAJOR,
            minor=MINOR,
            micro=MICRO,
            prerelease=PRERELEASE,
            dev=git_count,
        )
        print("Writing version {} to {}.".format(version, VERSION_FILE))
        write_version_file(version, git_revision)
        return version, git_revision

    if os.path.isfile(VERSION_FILE):
        version_info = runpy.run_path(VERSION_FILE)
        return version_info["version"], version_info["git_revision"]

    # A plain source tree without Git history.
    version = template.format(
        major=MAJOR,
        minor=MINOR,
        micro=MICRO,
        prerelease=PRERELEASE,
        dev="0",
    )
    write_version_file(version, "unknown")
    return version, "unknown"


def get_long_description():
    """ Read long description from README.rst. """
    with open("README.rst", "r", encoding="utf-8") as readme:
        return readme.read()


if __name__ == "__main__":
    version, git_revision = resolve_version()

    setup(
        name="tinprov",
        version=version,
        author="tinprov developers",
        classifiers=[
            c.strip()
            for c in """\
            Development Status :: 4 - Beta
            Intended Audience :: Developers
            Intended Audience :: Science/Research
            License :: OSI Approved :: BSD License
            Operating System :: OS Independent
            Programming Language :: Python
            Programming Language :: Python :: 3.8
            Programming Language :: Python :: 3.9
            Programming Language :: Python :: 3.10
            Programming Language :: Python :: 3.11
            Programming Language :: Python :: Implementation :: CPython
            Topic :: Database
            Topic :: Scientific/Engineering :: Information Analysis
            Topic :: Software Development :: Libraries
            """.splitlines()
            if len(c.strip()) > 0
        ],
        description="Temporal provenance over interaction logs",
        long_description=get_long_description(),
        long_description_content_type="text/x-rst",
        entry_points={
            "console_scripts": ["tinprov = tinprov.cli.main:cli"]
        },
        install_requires=["apptools[preferences]", "click", "setuptools", "traits"],
        extras_require={
            "docs": ["enthought-sphinx-theme", "Sphinx>=2.1.0,!=3.2.0"],
            "test": ["coverage", "flake8"],
        },
        license="BSD",
        packages=find_packages(exclude=["examples", "examples.*"]),
        package_data={"": ["*.ini"]},
        python_requires=">=3.8",
        zip_safe=False,
    )
