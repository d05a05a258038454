import os
import setuptools


def read(rel_path):
    here = os.path.abspath(os.path.dirname(__file__))
    with open(os.path.join(here, rel_path), 'r') as fp:
        return fp.read()


def get_version(rel_path):
    for line in read(rel_path).splitlines():
        if line.startswith('__version__'):
            delim = '"' if '"' in line else "'"
            return line.split(delim)[1]
    raise RuntimeError("Unable to find version string.")


setuptools.setup(
    name='qsym',
    version=get_version('qsym/__init__.py'),
    description='Symmetry of structures over the rationals: half-graph truncations, automorphism groups, '
                'distinguishing colourings and back-and-forth witnesses.',
    long_description=read('README.md'),
    long_description_content_type='text/markdown',
    packages=setuptools.find_packages(include=['qsym*']),
    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
    ],
    python_requires='>=3.8',
    install_requires=[
        'addict>=2.4.0',
        'click>=7.0',
        'networkx>=2.5',
        'numpy>=1.18.0',
        'pyyaml>=5.4.1',
        'typeguard>=2.13,<3.0',
    ],
    extras_require={
        'test': ['pytest'],
        'docs': [
            'sphinx',
            'pydata-sphinx-theme',
        ],
    },
    entry_points={
        'console_scripts': [
            'qsym = qsym.cli:main',
        ]
    }
)
