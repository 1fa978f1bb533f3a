from setuptools import setup, find_packages


setup(
    name='opprobe',
    setup_requires='setupmeta',
    versioning='dev',
    description='Reconstruct and classify linear differential operators',
    author='Thomas Mignot',
    author_email='jamespic@gmail.com',
    url='https://yourlabs.io/oss/opprobe',
    packages=find_packages('src'),
    package_dir={'': 'src'},
    include_package_data=True,
    keywords='differential operators smoothness locality',
    install_requires=[
        'cli2',
        'numpy',
    ],
    tests_require=[
        'pytest',
    ],
    entry_points={
        'console_scripts': [
            'opprobe = opprobe.cli:cli.entry_point',
        ],
    },
    classifiers=[
        'Development Status :: 1 - Planning',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    python_requires='>=3.8',
)
