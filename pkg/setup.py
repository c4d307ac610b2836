#!/usr/bin/env python
"""
Package metadata for coulomb-qed.
"""
import os
import re

from setuptools import find_packages, setup


def get_version(*file_paths):
    """
    Extract the version string from the file.

    Input:
     - file_paths: relative path fragments to file with
                   version string
    """
    filename = os.path.join(os.path.dirname(__file__), *file_paths)
    with open(filename, encoding='utf-8') as version_file:
        version_match = re.search(r"^__version__ = ['\"]([^'\"]*)['\"]", version_file.read(), re.M)
    if version_match:
        return version_match.group(1)
    raise RuntimeError('Unable to find version string.')


def load_requirements(*requirements_paths):
    """
    Load all requirements from the specified requirements files.

    Returns:
        list: Requirements file relative path strings
    """
    requirements = set()
    for path in requirements_paths:
        with open(path, encoding='utf-8') as requirements_file:
            requirements.update(
                line.split('#')[0].strip() for line in requirements_file.readlines()
                if is_requirement(line.strip())
            )
    return list(requirements)


def is_requirement(line):
    """
    Return True if the requirement line is a package requirement.

    Returns:
        bool: True if the line is not blank, a comment, a URL, or
              an included file
    """
    return line and not line.startswith(('-r', '#', '-e', 'git+', '-c'))


def read(name):
    with open(os.path.join(os.path.dirname(__file__), name), encoding='utf-8') as text_file:
        return text_file.read()


VERSION = get_version('coulombqed', '__init__.py')

setup(
    name='coulomb-qed',
    version=VERSION,
    description="""Lattice QED in Coulomb gauge: Hamiltonian builds, resource bounds and Trotter checks.""",
    long_description=read('README.rst') + '\n\n' + read('CHANGELOG.rst'),
    packages=find_packages(include=["coulombqed", "coulombqed.*"], exclude=["*tests"]),
    package_data={'coulombqed': ['schemas/*.json']},
    include_package_data=True,
    install_requires=load_requirements('requirements/base.in'),
    python_requires=">=3.10",
    license="AGPL 3.0",
    zip_safe=False,
    keywords='Python lattice QED Trotter',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Framework :: Django',
        'Framework :: Django :: 4.2',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU Affero General Public License v3 or later (AGPLv3+)',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.11',
        'Topic :: Scientific/Engineering :: Physics',
    ],
)
